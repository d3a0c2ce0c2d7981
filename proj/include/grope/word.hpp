#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grope/errors.hpp"

namespace grope {

/// One letter of a free-group word: generator index (0-based, printed as
/// x1, x2, ...) raised to +1 or -1.
struct Letter {
    std::uint32_t generator = 0;
    int sign = 1;

    Letter inverse() const { return {generator, -sign}; }

    friend bool operator==(const Letter&, const Letter&) = default;
    friend std::strong_ordering operator<=>(const Letter& a, const Letter& b)
    {
        if (auto c = a.generator <=> b.generator; c != 0) return c;
        // x before x^-1
        return b.sign <=> a.sign;
    }
};

/// A freely reduced word in the free group of rank `rank()`.
/// The empty word is the identity.
class GroupWord {
public:
    GroupWord() = default;
    explicit GroupWord(std::size_t rank) : rank_(rank) {}

    static GroupWord identity(std::size_t rank) { return GroupWord(rank); }
    static GroupWord generator(std::size_t rank, std::uint32_t index, int sign = 1);

    std::size_t rank() const noexcept { return rank_; }
    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool is_identity() const noexcept { return letters_.empty(); }

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
    /// Shortlex order on the letters; rank breaks ties.
    friend std::strong_ordering operator<=>(const GroupWord& a, const GroupWord& b)
    {
        if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.letters_.size(); ++i)
            if (auto c = a.letters_[i] <=> b.letters_[i]; c != 0) return c;
        return a.rank_ <=> b.rank_;
    }

private:
    friend GroupWord reduce(std::span<const Letter> raw, std::size_t rank);

    std::size_t rank_ = 0;
    std::vector<Letter> letters_;
};

/// Freely reduces `raw`. Throws ValidationError on an out-of-range generator
/// or a sign other than +-1.
inline GroupWord reduce(std::span<const Letter> raw, std::size_t rank)
{
    GroupWord out(rank);
    out.letters_.reserve(raw.size());
    for (const Letter& l : raw) {
        if (l.generator >= rank)
            throw ValidationError("generator x" + std::to_string(l.generator + 1) + " outside alphabet of rank " +
                                  std::to_string(rank));
        if (l.sign != 1 && l.sign != -1) throw ValidationError("letter exponent must be +1 or -1");
        if (!out.letters_.empty() && out.letters_.back() == l.inverse())
            out.letters_.pop_back();
        else
            out.letters_.push_back(l);
    }
    return out;
}

inline GroupWord GroupWord::generator(std::size_t rank, std::uint32_t index, int sign)
{
    const Letter l{index, sign};
    return reduce(std::span<const Letter>(&l, 1), rank);
}

inline void require_same_alphabet(const GroupWord& a, const GroupWord& b)
{
    if (a.rank() != b.rank())
        throw AlphabetMismatch("alphabet mismatch: rank " + std::to_string(a.rank()) + " vs rank " +
                               std::to_string(b.rank()));
}

inline GroupWord multiply(const GroupWord& a, const GroupWord& b)
{
    require_same_alphabet(a, b);
    std::vector<Letter> raw(a.letters().begin(), a.letters().end());
    raw.insert(raw.end(), b.letters().begin(), b.letters().end());
    return reduce(raw, a.rank());
}

inline GroupWord invert(const GroupWord& a)
{
    std::vector<Letter> raw;
    raw.reserve(a.length());
    for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it) raw.push_back(it->inverse());
    return reduce(raw, a.rank());
}

/// a b a^-1 b^-1
inline GroupWord commutator(const GroupWord& a, const GroupWord& b)
{
    return multiply(multiply(a, b), multiply(invert(a), invert(b)));
}

/// Representative of the unoriented loop {w, w^-1}: the shortlex-smaller of
/// the two. Double-point loops are compared through this.
inline GroupWord unoriented(const GroupWord& w)
{
    GroupWord inv = invert(w);
    return inv < w ? inv : w;
}

inline bool same_loop(const GroupWord& a, const GroupWord& b)
{
    return a == b || a == invert(b);
}

inline std::string to_string(const Letter& l)
{
    std::string s = "x" + std::to_string(l.generator + 1);
    if (l.sign < 0) s += "^-1";
    return s;
}

/// Canonical text form: letters separated by single spaces, "1" for identity.
inline std::string to_string(const GroupWord& w)
{
    if (w.is_identity()) return "1";
    std::string s;
    for (const Letter& l : w.letters()) {
        if (!s.empty()) s += ' ';
        s += to_string(l);
    }
    return s;
}

} // namespace grope
