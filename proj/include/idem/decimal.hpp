#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idem {

/// Exact decimal number: integer mantissa scaled by a power of ten.
///
/// Thresholds, trust levels, and capability measurements are all compared
/// for *exact* equality, so they are never stored as binary floating point.
/// Values are kept normalized (no trailing fractional zeros, no negative
/// zero), which makes structural equality coincide with the canonical text
/// rendering used by the contract DSL.
class Decimal {
public:
    static constexpr int kMaxScale = 18;

    constexpr Decimal() = default;

    static constexpr Decimal from_int(std::int64_t v) {
        Decimal d;
        d.mant_ = v;
        d.scale_ = 0;
        return d;
    }

    /// Parses `[-]digits[.digits]`. No exponent, no '+', no lone '.'.
    static std::optional<Decimal> try_parse(std::string_view text) {
        std::size_t i = 0;
        bool negative = false;
        if (i < text.size() && text[i] == '-') {
            negative = true;
            ++i;
        }
        if (i >= text.size() || !is_digit(text[i])) return std::nullopt;

        unsigned __int128 mant = 0;
        int digits = 0;
        while (i < text.size() && is_digit(text[i])) {
            mant = mant * 10 + static_cast<unsigned>(text[i] - '0');
            if (++digits > 2 * kMaxScale) return std::nullopt;
            ++i;
        }
        int scale = 0;
        if (i < text.size() && text[i] == '.') {
            ++i;
            if (i >= text.size() || !is_digit(text[i])) return std::nullopt;
            while (i < text.size() && is_digit(text[i])) {
                mant = mant * 10 + static_cast<unsigned>(text[i] - '0');
                if (++scale > kMaxScale) return std::nullopt;
                ++i;
            }
        }
        if (i != text.size()) return std::nullopt;
        if (mant > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
            return std::nullopt;

        Decimal d;
        d.mant_ = negative ? -static_cast<std::int64_t>(mant) : static_cast<std::int64_t>(mant);
        d.scale_ = scale;
        d.normalize();
        return d;
    }

    static Decimal parse(std::string_view text) {
        auto d = try_parse(text);
        if (!d) throw std::invalid_argument("invalid decimal: '" + std::string(text) + "'");
        return *d;
    }

    /// Canonical rendering: minimal digits, no trailing zeros, no leading '+'.
    std::string str() const {
        std::string digits = std::to_string(mant_ < 0 ? -static_cast<std::uint64_t>(mant_) : static_cast<std::uint64_t>(mant_));
        std::string out;
        if (mant_ < 0) out.push_back('-');
        if (scale_ == 0) {
            out += digits;
            return out;
        }
        if (static_cast<int>(digits.size()) <= scale_)
            digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
        out += digits.substr(0, digits.size() - static_cast<std::size_t>(scale_));
        out.push_back('.');
        out += digits.substr(digits.size() - static_cast<std::size_t>(scale_));
        return out;
    }

    constexpr std::int64_t mantissa() const { return mant_; }
    constexpr int scale() const { return scale_; }
    constexpr bool is_zero() const { return mant_ == 0; }
    constexpr bool is_negative() const { return mant_ < 0; }

    friend constexpr bool operator==(const Decimal& a, const Decimal& b) {
        // Normalized representation is unique.
        return a.mant_ == b.mant_ && a.scale_ == b.scale_;
    }

    friend constexpr std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
        const int s = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
        const __int128 lhs = static_cast<__int128>(a.mant_) * pow10(s - a.scale_);
        const __int128 rhs = static_cast<__int128>(b.mant_) * pow10(s - b.scale_);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Decimal operator+(const Decimal& a, const Decimal& b) {
        const int s = a.scale_ > b.scale_ ? a.scale_ : b.scale_;
        const __int128 sum = static_cast<__int128>(a.mant_) * pow10(s - a.scale_) +
                             static_cast<__int128>(b.mant_) * pow10(s - b.scale_);
        return from_parts(sum, s);
    }

    friend Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }

    friend Decimal operator*(const Decimal& a, const Decimal& b) {
        return from_parts(static_cast<__int128>(a.mant_) * b.mant_, a.scale_ + b.scale_);
    }

    constexpr Decimal operator-() const {
        Decimal d = *this;
        d.mant_ = -d.mant_;
        return d;
    }

    Decimal abs() const { return mant_ < 0 ? -*this : *this; }

    /// Exact product with an integer count (used to compare means without division).
    Decimal times(std::int64_t n) const {
        return from_parts(static_cast<__int128>(mant_) * n, scale_);
    }

private:
    static constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }

    static constexpr __int128 pow10(int n) {
        __int128 p = 1;
        for (int i = 0; i < n; ++i) p *= 10;
        return p;
    }

    static Decimal from_parts(__int128 mant, int scale) {
        while (scale > 0 && mant % 10 == 0) {
            mant /= 10;
            --scale;
        }
        if (mant == 0) scale = 0;
        if (mant > std::numeric_limits<std::int64_t>::max() ||
            mant < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("decimal overflow");
        Decimal d;
        d.mant_ = static_cast<std::int64_t>(mant);
        d.scale_ = scale;
        return d;
    }

    void normalize() {
        while (scale_ > 0 && mant_ % 10 == 0) {
            mant_ /= 10;
            --scale_;
        }
        if (mant_ == 0) scale_ = 0;
    }

    std::int64_t mant_ = 0;
    int scale_ = 0;
};

}  // namespace idem
