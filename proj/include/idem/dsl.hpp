#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <idem/core.hpp>
#include <idem/errors.hpp>

namespace idem {

// Contract grammar (one contract per string):
//
//   contract   = capability comparator threshold [ "over" duration ]
//                [ "max-episode" duration ] [ "per-group" ]
//   capability = [a-z][a-z0-9_]*
//   comparator = ">=" | ">" | "<=" | "<"
//   threshold  = ["-"] digits ["." digits]     ; at most 9 fractional digits
//   duration   = digits ("ms" | "s" | "m" | "h" | "d")
//
// Ladder files are line oriented (UTF-8, LF); '#' lines are comments:
//
//   rule    = "level" level "when" condition { "," condition }
//   condition = capability "in" "[" bound "," (bound | "inf") ")"
//   default = "default" level                  ; required, final line
//
// The full grammar is documented in docs/dsl.md.

namespace detail {

inline constexpr int kMaxThresholdFracDigits = 9;

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    std::size_t pos() const { return pos_; }
    bool eof() const { return pos_ >= src_.size(); }

    void skip_spaces() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }

    std::string found_here() const {
        if (eof()) return "";
        return std::string(1, src_[pos_]);
    }

    [[noreturn]] void fail(std::string expected, std::optional<std::size_t> at = std::nullopt) const {
        std::size_t p = at.value_or(pos_);
        throw ParseError(p, std::move(expected), p < src_.size() ? std::string(1, src_[p]) : "");
    }

    /// Word made of identifier characters: [a-z][a-z0-9_]*.
    std::string identifier(const char* what) {
        std::size_t start = pos_;
        if (eof() || src_[pos_] < 'a' || src_[pos_] > 'z') fail(what);
        while (pos_ < src_.size() && (is_ident_char(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    /// Keyword token: letters and '-' (covers "max-episode", "per-group").
    std::string keyword() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || src_[pos_] == '-')) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    Decimal decimal(const char* what) {
        std::size_t start = pos_;
        if (!eof() && src_[pos_] == '-') ++pos_;
        if (eof() || !is_digit(src_[pos_])) fail(what, start);
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            std::size_t frac_start = pos_;
            if (eof() || !is_digit(src_[pos_])) fail("fractional digits");
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            if (pos_ - frac_start > kMaxThresholdFracDigits)
                fail("at most 9 fractional digits", frac_start);
        }
        auto d = Decimal::try_parse(src_.substr(start, pos_ - start));
        if (!d) fail(what, start);
        return *d;
    }

    Comparator comparator() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (src_[pos_] == '<' || src_[pos_] == '>' || src_[pos_] == '='))
            ++pos_;
        std::string_view tok = src_.substr(start, pos_ - start);
        if (tok == ">=") return Comparator::GreaterEqual;
        if (tok == ">") return Comparator::Greater;
        if (tok == "<=") return Comparator::LessEqual;
        if (tok == "<") return Comparator::Less;
        pos_ = start;
        fail("comparator (>=, >, <= or <)");
    }

    Duration duration() {
        std::size_t start = pos_;
        if (eof() || !is_digit(src_[pos_])) fail("duration");
        unsigned __int128 value = 0;
        while (pos_ < src_.size() && is_digit(src_[pos_])) {
            value = value * 10 + static_cast<unsigned>(src_[pos_] - '0');
            if (value > UINT64_MAX) fail("duration within range", start);
            ++pos_;
        }
        std::size_t unit_start = pos_;
        while (pos_ < src_.size() && src_[pos_] >= 'a' && src_[pos_] <= 'z') ++pos_;
        std::string_view unit = src_.substr(unit_start, pos_ - unit_start);
        std::uint64_t factor = 0;
        if (unit == "ms") factor = 1;
        else if (unit == "s") factor = 1000;
        else if (unit == "m") factor = 60'000;
        else if (unit == "h") factor = 3'600'000;
        else if (unit == "d") factor = 86'400'000;
        else fail("duration unit (ms, s, m, h or d)", unit_start);
        unsigned __int128 ticks = value * factor;
        if (ticks > UINT64_MAX) fail("duration within range", start);
        return Duration{static_cast<std::uint64_t>(ticks)};
    }

    void expect(char c, const char* what) {
        if (eof() || src_[pos_] != c) fail(what);
        ++pos_;
    }

    bool try_consume(char c) {
        if (!eof() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

private:
    static constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static constexpr bool is_ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline std::string render_duration(Duration d) {
    struct Unit {
        std::uint64_t factor;
        const char* suffix;
    };
    // Largest unit that divides the tick count wins; ms always divides.
    static constexpr Unit units[] = {
        {86'400'000, "d"}, {3'600'000, "h"}, {60'000, "m"}, {1000, "s"}, {1, "ms"}};
    for (const auto& u : units)
        if (d.ticks % u.factor == 0) return std::to_string(d.ticks / u.factor) + u.suffix;
    return std::to_string(d.ticks) + "ms";
}

}  // namespace detail

inline ContractSpec parse_contract(std::string_view src) {
    detail::Scanner s(src);
    s.skip_spaces();
    ContractSpec c;
    c.capability = s.identifier("capability");
    s.skip_spaces();
    c.comparator = s.comparator();
    s.skip_spaces();
    c.threshold = s.decimal("threshold");
    s.skip_spaces();

    bool seen_window = false, seen_episode = false, seen_group = false;
    while (!s.eof()) {
        std::size_t at = s.pos();
        std::string clause = s.keyword();
        if (clause == "over" && !seen_window && !seen_episode && !seen_group) {
            seen_window = true;
            s.skip_spaces();
            c.window = s.duration();
        } else if (clause == "max-episode" && !seen_episode && !seen_group) {
            if (!seen_window) s.fail("'over' window before 'max-episode'", at);
            seen_episode = true;
            s.skip_spaces();
            c.max_episode = s.duration();
        } else if (clause == "per-group" && !seen_group) {
            seen_group = true;
            c.per_group = true;
        } else {
            s.fail("'over', 'max-episode', 'per-group' or end of input", at);
        }
        s.skip_spaces();
    }
    return c;
}

/// Canonical single-space form; `parse_contract(render_contract(c)) == c`.
inline std::string render_contract(const ContractSpec& c) {
    c.validate();
    std::string out = c.capability;
    out.push_back(' ');
    out += comparator_symbol(c.comparator);
    out.push_back(' ');
    out += c.threshold.str();
    if (c.window) {
        out += " over ";
        out += detail::render_duration(*c.window);
    }
    if (c.max_episode) {
        out += " max-episode ";
        out += detail::render_duration(*c.max_episode);
    }
    if (c.per_group) out += " per-group";
    return out;
}

inline TrustProfile parse_profile(const std::vector<std::string>& contract_texts) {
    std::vector<ContractSpec> contracts;
    contracts.reserve(contract_texts.size());
    for (const auto& text : contract_texts) contracts.push_back(parse_contract(text));
    return TrustProfile(std::move(contracts));
}

inline std::vector<std::string> render_profile(const TrustProfile& profile) {
    std::vector<std::string> out;
    out.reserve(profile.contracts().size());
    for (const auto& c : profile.contracts()) out.push_back(render_contract(c));
    return out;
}

inline TrustLadder parse_ladder(std::string_view src) {
    std::vector<LadderRule> rules;
    std::optional<Decimal> default_level;
    std::size_t default_line_offset = 0;

    std::size_t line_start = 0;
    while (line_start <= src.size()) {
        std::size_t nl = src.find('\n', line_start);
        std::string_view line = src.substr(
            line_start, nl == std::string_view::npos ? std::string_view::npos : nl - line_start);
        std::size_t offset = line_start;
        line_start = nl == std::string_view::npos ? src.size() + 1 : nl + 1;

        detail::Scanner s(line);
        s.skip_spaces();
        if (s.eof() || line[s.pos()] == '#') continue;
        if (default_level)
            throw ParseError(default_line_offset, "default to be the final line", "default");

        std::size_t kw_at = s.pos();
        std::string kw = s.keyword();
        if (kw == "default") {
            s.skip_spaces();
            std::size_t level_at = s.pos();
            Decimal level = s.decimal("level");
            if (level.is_negative())
                throw ParseError(offset + level_at, "non-negative level", level.str());
            s.skip_spaces();
            if (!s.eof()) throw ParseError(offset + s.pos(), "end of line", s.found_here());
            default_level = level;
            default_line_offset = offset;
            continue;
        }
        if (kw != "level") throw ParseError(offset + kw_at, "'level' or 'default'", kw);

        LadderRule rule;
        s.skip_spaces();
        std::size_t level_at = s.pos();
        rule.level = s.decimal("level");
        if (rule.level.is_negative())
            throw ParseError(offset + level_at, "non-negative level", rule.level.str());
        s.skip_spaces();
        std::size_t when_at = s.pos();
        if (s.keyword() != "when") throw ParseError(offset + when_at, "'when'", s.found_here());
        do {
            s.skip_spaces();
            LadderCondition cond;
            try {
                cond.capability = s.identifier("capability");
                s.skip_spaces();
                std::size_t in_at = s.pos();
                if (s.keyword() != "in") throw ParseError(in_at, "'in'", s.found_here());
                s.skip_spaces();
                s.expect('[', "'['");
                s.skip_spaces();
                cond.lower = s.decimal("lower bound");
                s.skip_spaces();
                s.expect(',', "','");
                s.skip_spaces();
                if (!s.eof() && line[s.pos()] == 'i') {
                    std::size_t inf_at = s.pos();
                    if (s.keyword() != "inf") throw ParseError(inf_at, "'inf' or decimal", s.found_here());
                } else {
                    cond.upper = s.decimal("upper bound or 'inf'");
                }
                s.skip_spaces();
                s.expect(')', "')'");
            } catch (const ParseError& e) {
                throw ParseError(offset + e.position, e.expected, e.found);
            }
            rule.conditions.push_back(std::move(cond));
            s.skip_spaces();
        } while (s.try_consume(','));
        if (!s.eof()) throw ParseError(offset + s.pos(), "',' or end of line", s.found_here());
        rules.push_back(std::move(rule));
    }

    if (!default_level) throw MissingDefaultError("ladder has no 'default' line");
    return TrustLadder(std::move(rules), *default_level);
}

/// Canonical ladder text: one rule per line in order, final default, LF joined.
inline std::string render_ladder(const TrustLadder& ladder) {
    std::string out;
    for (const auto& rule : ladder.rules()) {
        out += "level ";
        out += rule.level.str();
        out += " when ";
        for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
            const auto& cond = rule.conditions[i];
            if (i > 0) out += ", ";
            out += cond.capability;
            out += " in [";
            out += cond.lower.str();
            out += ", ";
            out += cond.upper ? cond.upper->str() : "inf";
            out += ")";
        }
        out.push_back('\n');
    }
    out += "default ";
    out += ladder.default_level().str();
    return out;
}

}  // namespace idem
