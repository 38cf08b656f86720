#include "coneproj/index_set.hpp"

#include <bit>
#include <stdexcept>

namespace coneproj {

namespace {
constexpr int kWordBits = 64;
} // namespace

IndexSet::IndexSet(int dim) : dim_(dim) {
    if (dim < 0) {
        throw std::invalid_argument("IndexSet: negative dimension");
    }
    words_.assign(static_cast<std::size_t>((dim + kWordBits - 1) / kWordBits), 0);
}

IndexSet IndexSet::all(int dim) {
    IndexSet s(dim);
    for (int i = 1; i <= dim; ++i) {
        s.insert(i);
    }
    return s;
}

IndexSet IndexSet::of(int dim, std::initializer_list<int> members) {
    IndexSet s(dim);
    for (int i : members) {
        s.insert(i);
    }
    return s;
}

IndexSet IndexSet::from_mask(int dim, std::uint64_t mask) {
    if (dim > kWordBits) {
        throw std::invalid_argument("IndexSet::from_mask: dim > 64");
    }
    IndexSet s(dim);
    if (dim > 0) {
        s.words_[0] = mask & (dim == kWordBits ? ~0ULL : ((1ULL << dim) - 1));
    }
    return s;
}

void IndexSet::check_index(int i) const {
    if (i < 1 || i > dim_) {
        throw std::out_of_range("IndexSet: index " + std::to_string(i) +
                                " outside {1,...," + std::to_string(dim_) + "}");
    }
}

int IndexSet::count() const {
    int c = 0;
    for (std::uint64_t w : words_) {
        c += std::popcount(w);
    }
    return c;
}

bool IndexSet::contains(int i) const {
    check_index(i);
    const int b = i - 1;
    return (words_[b / kWordBits] >> (b % kWordBits)) & 1ULL;
}

void IndexSet::insert(int i) {
    check_index(i);
    const int b = i - 1;
    words_[b / kWordBits] |= (1ULL << (b % kWordBits));
}

void IndexSet::erase(int i) {
    check_index(i);
    const int b = i - 1;
    words_[b / kWordBits] &= ~(1ULL << (b % kWordBits));
}

IndexSet IndexSet::complement() const {
    IndexSet s(dim_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        s.words_[w] = ~words_[w];
    }
    // clear padding bits above dim
    const int tail = dim_ % kWordBits;
    if (tail != 0 && !s.words_.empty()) {
        s.words_.back() &= (1ULL << tail) - 1;
    }
    return s;
}

std::vector<int> IndexSet::members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = 1; i <= dim_; ++i) {
        if (contains(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<int> IndexSet::complement_members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(dim_ - count()));
    for (int i = 1; i <= dim_; ++i) {
        if (!contains(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::uint64_t IndexSet::to_mask() const {
    if (dim_ > kWordBits) {
        throw std::logic_error("IndexSet::to_mask: dim > 64");
    }
    return words_.empty() ? 0 : words_[0];
}

std::size_t IndexSet::hash() const {
    // FNV-1a over the words plus the width.
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(dim_));
    for (std::uint64_t w : words_) {
        mix(w);
    }
    return static_cast<std::size_t>(h);
}

std::string IndexSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int i : members()) {
        if (!first) {
            out += ",";
        }
        out += std::to_string(i);
        first = false;
    }
    out += "}";
    return out;
}

} // namespace coneproj
