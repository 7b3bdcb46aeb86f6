#include "nsmin/ground.hpp"

#include <bit>
#include <charconv>
#include <ostream>

#include "nsmin/errors.hpp"

namespace nsmin {

std::uint64_t full_mask(int n)
{
    if (n < 0 || n > kMaxGroundSize)
        throw InvalidArgument("ground-set size " + std::to_string(n) + " outside [0, 64]");
    return n == kMaxGroundSize ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

Subset::Subset(int n, std::uint64_t bits) : n_(n), bits_(bits)
{
    if ((bits & ~full_mask(n)) != 0)
        throw InvalidArgument("subset mask has bits above ground-set size " + std::to_string(n));
}

Subset Subset::of(int n, std::initializer_list<int> elements)
{
    return of(n, std::vector<int>(elements));
}

Subset Subset::of(int n, const std::vector<int>& elements)
{
    Subset s = empty(n);
    for (int e : elements)
        s = s.with(e);
    return s;
}

Subset Subset::from_hex(int n, std::string_view text)
{
    if (text.starts_with("0x") || text.starts_with("0X"))
        text.remove_prefix(2);
    std::uint64_t bits = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), bits, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw InvalidArgument("malformed subset mask '" + std::string(text) + "'");
    return Subset(n, bits);
}

int Subset::size() const { return std::popcount(bits_); }

void Subset::check_element(int element) const
{
    if (element < 1 || element > n_)
        throw InvalidArgument("element " + std::to_string(element) + " outside [1, " +
                              std::to_string(n_) + "]");
}

bool Subset::contains(int element) const
{
    check_element(element);
    return (bits_ >> (element - 1)) & 1U;
}

Subset Subset::with(int element) const
{
    check_element(element);
    return Subset(n_, bits_ | (std::uint64_t{1} << (element - 1)));
}

Subset Subset::without(int element) const
{
    check_element(element);
    return Subset(n_, bits_ & ~(std::uint64_t{1} << (element - 1)));
}

bool Subset::is_subset_of(const Subset& other) const
{
    return n_ == other.n_ && (bits_ & ~other.bits_) == 0;
}

std::vector<int> Subset::elements() const
{
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(std::countr_zero(b) + 1);
    return out;
}

int Subset::min_element() const
{
    if (bits_ == 0)
        throw InvalidArgument("min_element of empty set");
    return std::countr_zero(bits_) + 1;
}

int Subset::max_element() const
{
    if (bits_ == 0)
        throw InvalidArgument("max_element of empty set");
    return 64 - std::countl_zero(bits_);
}

std::string Subset::to_hex() const
{
    char buf[2 + 16];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, bits_, 16);
    (void)ec;
    return "0x" + std::string(buf, ptr);
}

std::ostream& operator<<(std::ostream& os, const Subset& s)
{
    os << '{';
    bool first = true;
    for (int e : s.elements()) {
        if (!first)
            os << ',';
        os << e;
        first = false;
    }
    return os << '}';
}

Point characteristic_vector(const Subset& s, int n)
{
    if (s.n() != n)
        throw InvalidArgument("subset over [" + std::to_string(s.n()) +
                              "] used with ground-set size " + std::to_string(n));
    Point x = Point::Zero(n);
    for (int e : s.elements())
        x(e - 1) = 1.0;
    return x;
}

std::vector<Subset> enumerate_subsets(int n)
{
    if (n > kMaxEnumerableSize)
        throw CapacityError("exhaustive enumeration limited to n <= " +
                            std::to_string(kMaxEnumerableSize) + ", got n = " + std::to_string(n));
    if (n < 0)
        throw InvalidArgument("negative ground-set size");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<Subset> out;
    out.reserve(count);
    for (std::uint64_t m = 0; m < count; ++m)
        out.emplace_back(n, m);
    return out;
}

} // namespace nsmin
