#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grope/errors.hpp"
#include "grope/word.hpp"

namespace grope {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("series coefficient overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("series coefficient overflow");
    return r;
}

} // namespace detail

/// Monomial in noncommuting variables X_i, written as the list of generator
/// indices in order.
using Monomial = std::vector<std::uint32_t>;

/// Element 1 + sum c_m m of the noncommutative power series ring with integer
/// coefficients, truncated above degree `cutoff()`. The constant term is
/// implicitly 1 and never stored; stored coefficients are nonzero.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t cutoff) : cutoff_(cutoff)
    {
        if (cutoff == 0) throw ValidationError("series cutoff must be at least 1");
    }

    /// 1 + X_g
    static TruncatedSeries variable(std::uint32_t g, std::size_t cutoff)
    {
        TruncatedSeries s(cutoff);
        s.terms_[{g}] = 1;
        return s;
    }

    /// 1 - X_g + X_g^2 - ... up to the cutoff
    static TruncatedSeries inverse_variable(std::uint32_t g, std::size_t cutoff)
    {
        TruncatedSeries s(cutoff);
        Monomial m;
        for (std::size_t d = 1; d <= cutoff; ++d) {
            m.push_back(g);
            s.terms_[m] = (d % 2 == 0) ? 1 : -1;
        }
        return s;
    }

    std::size_t cutoff() const noexcept { return cutoff_; }
    const std::map<Monomial, std::int64_t>& terms() const noexcept { return terms_; }
    bool is_one() const noexcept { return terms_.empty(); }

    std::int64_t coefficient(const Monomial& m) const
    {
        if (m.empty()) return 1;
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Lowest degree carrying a nonzero coefficient, if any.
    std::optional<std::size_t> lowest_degree() const
    {
        std::optional<std::size_t> best;
        for (const auto& [m, c] : terms_)
            if (!best || m.size() < *best) best = m.size();
        return best;
    }

    /// Terms of exactly degree d.
    std::map<Monomial, std::int64_t> homogeneous(std::size_t d) const
    {
        std::map<Monomial, std::int64_t> out;
        for (const auto& [m, c] : terms_)
            if (m.size() == d) out.emplace(m, c);
        return out;
    }

    /// Truncated product. Both factors must share the cutoff.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        if (a.cutoff_ != b.cutoff_) throw ValidationError("series cutoff mismatch");
        TruncatedSeries out(a.cutoff_);
        auto add = [&out](const Monomial& m, std::int64_t c) {
            auto& slot = out.terms_[m];
            slot = detail::checked_add(slot, c);
            if (slot == 0) out.terms_.erase(m);
        };
        // (1 + A)(1 + B) = 1 + A + B + AB
        for (const auto& [m, c] : a.terms_) add(m, c);
        for (const auto& [m, c] : b.terms_) add(m, c);
        for (const auto& [ma, ca] : a.terms_) {
            if (ma.size() >= a.cutoff_) continue;
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.size() + mb.size() > a.cutoff_) continue;
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                add(m, detail::checked_mul(ca, cb));
            }
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::size_t cutoff_;
    std::map<Monomial, std::int64_t> terms_;
};

/// Magnus expansion x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ..., truncated
/// above `cutoff`.
inline TruncatedSeries magnus(const GroupWord& w, std::size_t cutoff)
{
    TruncatedSeries s(cutoff);
    for (const Letter& l : w.letters())
        s = s * (l.sign > 0 ? TruncatedSeries::variable(l.generator, cutoff)
                            : TruncatedSeries::inverse_variable(l.generator, cutoff));
    return s;
}

inline std::string to_string(const TruncatedSeries& s)
{
    std::string out = "1";
    for (const auto& [m, c] : s.terms()) {
        out += c < 0 ? " - " : " + ";
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a) + "*";
        for (std::uint32_t g : m) out += "X" + std::to_string(g + 1);
    }
    return out;
}

/// Position of a word in the lower central series. `exact(k)` means the word
/// lies in the k-th term and not the (k+1)-st; `at_least(k)` means no
/// nonzero term was found up to the cutoff k-1; `infinite` is reserved for
/// the identity, which lies in every term.
struct Depth {
    enum class Kind { exact, at_least, infinite };

    Kind kind = Kind::infinite;
    std::size_t value = 0;

    static Depth exact(std::size_t k) { return {Kind::exact, k}; }
    static Depth at_least(std::size_t k) { return {Kind::at_least, k}; }
    static Depth infinite() { return {Kind::infinite, 0}; }

    bool is_exact() const noexcept { return kind == Kind::exact; }
    bool is_infinite() const noexcept { return kind == Kind::infinite; }

    /// Largest k for which the word is known to lie in the k-th term.
    std::size_t lower_bound() const noexcept
    {
        return kind == Kind::infinite ? std::numeric_limits<std::size_t>::max() : value;
    }

    friend bool operator==(const Depth&, const Depth&) = default;
};

inline std::string to_string(const Depth& d)
{
    switch (d.kind) {
    case Depth::Kind::exact:
        return std::to_string(d.value);
    case Depth::Kind::at_least:
        return ">=" + std::to_string(d.value);
    case Depth::Kind::infinite:
        break;
    }
    return "inf";
}

namespace detail {

// Magnus expansion with monomials packed into 64-bit keys, one map per degree.
// Only generators occurring in the word are kept, renumbered 1..r so that no
// digit is zero and the degree is recoverable from the key length.
class PackedExpansion {
public:
    PackedExpansion(std::size_t cutoff, unsigned bits) : cutoff_(cutoff), bits_(bits), levels_(cutoff + 1) {}

    void push_letter(std::uint64_t digit, int sign)
    {
        for (std::size_t d = cutoff_ - 1; d >= 1; --d) {
            for (const auto& [key, c] : levels_[d]) {
                std::uint64_t k = key;
                for (std::size_t j = 1; d + j <= cutoff_; ++j) {
                    k = (k << bits_) | digit;
                    add(d + j, k, (sign > 0 || j % 2 == 0) ? c : -c);
                    if (sign > 0) break;
                }
            }
        }
        std::uint64_t k = 0;
        for (std::size_t j = 1; j <= cutoff_; ++j) {
            k = (k << bits_) | digit;
            add(j, k, (sign > 0 || j % 2 == 0) ? 1 : -1);
            if (sign > 0) break;
        }
    }

    std::optional<std::size_t> lowest_degree() const
    {
        for (std::size_t d = 1; d <= cutoff_; ++d)
            if (!levels_[d].empty()) return d;
        return std::nullopt;
    }

private:
    void add(std::size_t degree, std::uint64_t key, std::int64_t c)
    {
        auto& level = levels_[degree];
        auto [it, inserted] = level.try_emplace(key, 0);
        it->second = checked_add(it->second, c);
        if (it->second == 0) level.erase(it);
    }

    std::size_t cutoff_;
    unsigned bits_;
    std::vector<std::unordered_map<std::uint64_t, std::int64_t>> levels_;
};

inline std::optional<std::size_t> lowest_nonzero_degree(const GroupWord& w, std::size_t cutoff)
{
    std::map<std::uint32_t, std::uint64_t> digits;
    for (const Letter& l : w.letters()) digits.emplace(l.generator, 0);
    std::uint64_t next = 1;
    for (auto& [g, d] : digits) d = next++;
    const unsigned bits = static_cast<unsigned>(std::bit_width(digits.size()));
    if (bits * cutoff > 64) return magnus(w, cutoff).lowest_degree();

    PackedExpansion e(cutoff, bits);
    for (const Letter& l : w.letters()) e.push_letter(digits.at(l.generator), l.sign);
    return e.lowest_degree();
}

} // namespace detail

/// Lower-central-series depth of `w` in the free group, read off as the
/// lowest nonzero degree of its Magnus expansion.
inline Depth lcs_depth(const GroupWord& w, std::size_t cutoff = 8)
{
    if (cutoff == 0) throw ValidationError("cutoff must be at least 1");
    if (w.is_identity()) return Depth::infinite();
    // Iterative deepening: terms below the depth vanish, so the expansion
    // only needs to be carried to the first nonzero degree.
    for (std::size_t c = 1; c <= cutoff; ++c)
        if (auto d = detail::lowest_nonzero_degree(w, c)) return Depth::exact(*d);
    return Depth::at_least(cutoff + 1);
}

} // namespace grope
