#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace nsmin {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

inline constexpr int kMaxGroundSize = 64;
inline constexpr int kMaxEnumerableSize = 20;

/// Bitmask with the low `n` bits set.
std::uint64_t full_mask(int n);

/// A subset of the ground set [n] = {1, ..., n}.
///
/// Elements are 1-indexed at this interface; element i lives in bit i-1.
/// Bits above position n are never set.
class Subset {
public:
    Subset() = default;
    Subset(int n, std::uint64_t bits);

    static Subset empty(int n) { return Subset(n, 0); }
    static Subset full(int n) { return Subset(n, full_mask(n)); }
    static Subset of(int n, std::initializer_list<int> elements);
    static Subset of(int n, const std::vector<int>& elements);
    static Subset from_hex(int n, std::string_view text);

    int n() const { return n_; }
    std::uint64_t bits() const { return bits_; }
    int size() const;
    bool is_empty() const { return bits_ == 0; }

    bool contains(int element) const;
    Subset with(int element) const;
    Subset without(int element) const;
    bool is_subset_of(const Subset& other) const;

    std::vector<int> elements() const;
    int min_element() const;
    int max_element() const;

    /// Lowercase hexadecimal bitmask, e.g. {1,3} -> "0x5".
    std::string to_hex() const;

    friend bool operator==(const Subset&, const Subset&) = default;

private:
    void check_element(int element) const;

    int n_ = 0;
    std::uint64_t bits_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Subset& s);

/// Indicator point of `s` in [0,1]^n.
Point characteristic_vector(const Subset& s, int n);

/// All 2^n subsets in increasing bitmask order. Guarded at n <= 20.
std::vector<Subset> enumerate_subsets(int n);

} // namespace nsmin
