#include <doctest.h>

#include <sstream>

#include "coneproj/errors.hpp"
#include "coneproj/matrix_io.hpp"

using namespace coneproj;

TEST_CASE("CSV matrices parse row-per-coordinate") {
    std::istringstream in("1,2\n3,4\n");
    const Eigen::MatrixXd m = parse_matrix_csv(in, "test");
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 3.0);
}

TEST_CASE("whitespace and blank lines are tolerated") {
    std::istringstream in(" 1 , 2 \n\n3,4\n");
    const Eigen::MatrixXd m = parse_matrix_csv(in, "test");
    CHECK(m.rows() == 2);
}

TEST_CASE("parse errors carry the source name") {
    SUBCASE("ragged rows") {
        std::istringstream in("1,2\n3\n");
        CHECK_THROWS_WITH_AS(parse_matrix_csv(in, "ragged.csv"),
                             doctest::Contains("ragged.csv"), InputError);
    }
    SUBCASE("non-numeric field") {
        std::istringstream in("1,x\n");
        CHECK_THROWS_AS(parse_matrix_csv(in, "bad.csv"), InputError);
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_AS(parse_matrix_csv(in, "empty.csv"), InputError);
    }
    SUBCASE("vectors must be single-column") {
        std::istringstream in("1,2\n3,4\n");
        CHECK_THROWS_AS(parse_vector_csv(in, "wide.csv"), InputError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_matrix_csv("/nonexistent/path.csv"), InputError);
    }
}

TEST_CASE("format/parse round trip preserves values") {
    Eigen::MatrixXd m(2, 3);
    m << 1.5, -2.25, 3.125, 0.1, 1e-17, -4e8;
    std::istringstream in(format_matrix_csv(m));
    const Eigen::MatrixXd back = parse_matrix_csv(in, "round");
    CHECK(back == m);  // %.17g is lossless for doubles

    Eigen::VectorXd v(3);
    v << -0.5, 2.0, 1e-300;
    std::istringstream vin(format_vector_csv(v));
    CHECK(parse_vector_csv(vin, "round") == v);
}
