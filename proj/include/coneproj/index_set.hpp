#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace coneproj {

/// Subset of {1,...,n} with value semantics and a fixed width n.
///
/// Indices are 1-based everywhere in the public interface, matching the
/// convention used for all external I/O. Equality and hashing are exact
/// bit-pattern comparisons, which is what the heuristic's loop detection
/// relies on.
class IndexSet {
public:
    IndexSet() = default;

    /// Empty subset of {1,...,dim}.
    explicit IndexSet(int dim);

    /// The full set {1,...,dim}.
    static IndexSet all(int dim);

    /// Build from explicit 1-based members.
    static IndexSet of(int dim, std::initializer_list<int> members);

    /// Decode a bit mask: bit (i-1) set means index i is a member.
    /// Only meaningful for dim <= 64 (enumeration in the exact method).
    static IndexSet from_mask(int dim, std::uint64_t mask);

    int dim() const { return dim_; }
    int count() const;
    bool empty() const { return count() == 0; }
    bool full() const { return count() == dim_; }

    bool contains(int i) const;
    void insert(int i);
    void erase(int i);

    IndexSet complement() const;

    /// Sorted 1-based members.
    std::vector<int> members() const;
    /// Sorted 1-based members of the complement.
    std::vector<int> complement_members() const;

    /// Inverse of from_mask; requires dim <= 64.
    std::uint64_t to_mask() const;

    std::size_t hash() const;
    bool operator==(const IndexSet& other) const = default;

    /// "{1,3,4}" with 1-based indices; "{}" when empty.
    std::string to_string() const;

private:
    void check_index(int i) const;

    int dim_ = 0;
    std::vector<std::uint64_t> words_;
};

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

} // namespace coneproj
