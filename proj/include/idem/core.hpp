#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <idem/decimal.hpp>
#include <idem/errors.hpp>

namespace idem {

/// Milliseconds since the ledger epoch.
struct Timestamp {
    std::uint64_t ticks = 0;

    friend constexpr auto operator<=>(Timestamp, Timestamp) = default;
};

struct Duration {
    std::uint64_t ticks = 0;

    friend constexpr auto operator<=>(Duration, Duration) = default;
};

constexpr Timestamp operator+(Timestamp t, Duration d) { return {t.ticks + d.ticks}; }

/// Lower edge of a window ending at `t`, clamped at the epoch.
constexpr Timestamp saturating_sub(Timestamp t, Duration d) {
    return {t.ticks >= d.ticks ? t.ticks - d.ticks : 0};
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

/// Dotted path of identifiers naming a position in the kind hierarchy.
/// A path is an ancestor of every path it is a proper prefix of.
class KindPath {
public:
    explicit KindPath(std::vector<std::string> segments) : segments_(std::move(segments)) {
        if (segments_.empty()) throw Error("kind path must have at least one segment");
        for (const auto& s : segments_)
            if (!is_identifier(s)) throw Error("invalid kind path segment: '" + s + "'");
    }

    /// Parses the dotted text form, e.g. "predict.credit_risk_score.tabular".
    static KindPath parse(std::string_view text) {
        std::vector<std::string> segs;
        std::size_t start = 0;
        while (true) {
            std::size_t dot = text.find('.', start);
            segs.emplace_back(text.substr(start, dot - start));
            if (dot == std::string_view::npos) break;
            start = dot + 1;
        }
        return KindPath(std::move(segs));
    }

    std::string str() const {
        std::string out = segments_[0];
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            out.push_back('.');
            out += segments_[i];
        }
        return out;
    }

    const std::vector<std::string>& segments() const { return segments_; }

    /// True iff this path is a prefix (proper or equal) of `other`.
    bool prefix_of(const KindPath& other) const {
        if (segments_.size() > other.segments_.size()) return false;
        return std::equal(segments_.begin(), segments_.end(), other.segments_.begin());
    }

    friend bool operator==(const KindPath&, const KindPath&) = default;

private:
    std::vector<std::string> segments_;
};

enum class Verb { Predict, Recognize, Generate };

inline std::string_view verb_name(Verb v) {
    switch (v) {
        case Verb::Predict: return "predict";
        case Verb::Recognize: return "recognize";
        case Verb::Generate: return "generate";
    }
    throw Error("unknown verb");
}

inline std::optional<Verb> verb_from_name(std::string_view s) {
    if (s == "predict") return Verb::Predict;
    if (s == "recognize") return Verb::Recognize;
    if (s == "generate") return Verb::Generate;
    return std::nullopt;
}

/// "[to predict/recognize/generate] X using Y": the technical capability a
/// system is designed to perform. Its kind path is the verb, then the object,
/// then each resource; refining the description extends the path.
class TechnoFunction {
public:
    TechnoFunction(Verb verb, std::optional<std::string> object = std::nullopt,
                   std::vector<std::string> resources = {})
        : verb_(verb), object_(std::move(object)), resources_(std::move(resources)) {
        if (object_ && !is_identifier(*object_)) throw Error("invalid techno-function object");
        if (!object_ && !resources_.empty())
            throw Error("techno-function resources require an object");
        for (const auto& r : resources_)
            if (!is_identifier(r)) throw Error("invalid techno-function resource: '" + r + "'");
    }

    Verb verb() const { return verb_; }
    const std::optional<std::string>& object() const { return object_; }
    const std::vector<std::string>& resources() const { return resources_; }

    KindPath kind_path() const {
        std::vector<std::string> segs{std::string(verb_name(verb_))};
        if (object_) segs.push_back(*object_);
        segs.insert(segs.end(), resources_.begin(), resources_.end());
        return KindPath(std::move(segs));
    }

    friend bool operator==(const TechnoFunction&, const TechnoFunction&) = default;

private:
    Verb verb_;
    std::optional<std::string> object_;
    std::vector<std::string> resources_;
};

/// True iff `kind` is a prefix (proper or equal) of the techno-function's path.
inline bool kind_membership(const TechnoFunction& tf, const KindPath& kind) {
    return kind.prefix_of(tf.kind_path());
}

enum class Comparator { GreaterEqual, Greater, LessEqual, Less };

inline std::string_view comparator_symbol(Comparator c) {
    switch (c) {
        case Comparator::GreaterEqual: return ">=";
        case Comparator::Greater: return ">";
        case Comparator::LessEqual: return "<=";
        case Comparator::Less: return "<";
    }
    throw Error("unknown comparator");
}

inline bool comparator_holds(Comparator c, const Decimal& lhs, const Decimal& rhs) {
    switch (c) {
        case Comparator::GreaterEqual: return lhs >= rhs;
        case Comparator::Greater: return lhs > rhs;
        case Comparator::LessEqual: return lhs <= rhs;
        case Comparator::Less: return lhs < rhs;
    }
    throw Error("unknown comparator");
}

/// One trustworthiness contract: a commitment on a single capability,
/// optionally aggregated over a sliding window and split per group.
struct ContractSpec {
    std::string capability;
    Comparator comparator = Comparator::GreaterEqual;
    Decimal threshold;
    std::optional<Duration> window;
    std::optional<Duration> max_episode;  // only meaningful with a window
    bool per_group = false;

    /// Contracts with the same signature state the same kind of commitment
    /// and may not coexist in one profile.
    auto signature() const { return std::tie(capability, comparator, window, per_group); }

    void validate() const {
        if (!is_identifier(capability))
            throw Error("invalid contract capability: '" + capability + "'");
        if (max_episode && !window) throw Error("max-episode requires a window");
    }

    friend bool operator==(const ContractSpec&, const ContractSpec&) = default;
};

/// The set of contracts a system must uphold. Stored sorted so that equal
/// profiles are structurally equal and render identically.
class TrustProfile {
public:
    TrustProfile() = default;

    explicit TrustProfile(std::vector<ContractSpec> contracts) : contracts_(std::move(contracts)) {
        for (const auto& c : contracts_) c.validate();
        std::sort(contracts_.begin(), contracts_.end(), [](const auto& a, const auto& b) {
            return std::tie(a.capability, a.comparator, a.window, a.per_group, a.max_episode,
                            a.threshold) < std::tie(b.capability, b.comparator, b.window,
                                                    b.per_group, b.max_episode, b.threshold);
        });
        for (std::size_t i = 1; i < contracts_.size(); ++i)
            if (contracts_[i].signature() == contracts_[i - 1].signature())
                throw Error("duplicate contract signature for capability '" +
                            contracts_[i].capability + "'");
    }

    const std::vector<ContractSpec>& contracts() const { return contracts_; }
    bool empty() const { return contracts_.empty(); }

    friend bool operator==(const TrustProfile&, const TrustProfile&) = default;

private:
    std::vector<ContractSpec> contracts_;
};

inline bool profiles_equal(const TrustProfile& a, const TrustProfile& b) { return a == b; }

/// Half-open capability interval `[lower, upper)`; no upper bound means +inf.
struct LadderCondition {
    std::string capability;
    Decimal lower;
    std::optional<Decimal> upper;

    bool contains(const Decimal& value) const {
        return value >= lower && (!upper || value < *upper);
    }

    friend bool operator==(const LadderCondition&, const LadderCondition&) = default;
};

/// All conditions must hold (conjunction) for the rule to match.
struct LadderRule {
    std::vector<LadderCondition> conditions;
    Decimal level;

    friend bool operator==(const LadderRule&, const LadderRule&) = default;
};

/// Ordered rules mapping capability values to a trustworthiness level.
/// First matching rule wins; the default applies when none matches.
class TrustLadder {
public:
    TrustLadder(std::vector<LadderRule> rules, Decimal default_level)
        : rules_(std::move(rules)), default_level_(default_level) {
        if (default_level_.is_negative()) throw Error("ladder default level must be >= 0");
        for (const auto& r : rules_) {
            if (r.conditions.empty()) throw Error("ladder rule needs at least one condition");
            if (r.level.is_negative()) throw Error("ladder level must be >= 0");
            for (const auto& c : r.conditions)
                if (!is_identifier(c.capability))
                    throw Error("invalid ladder capability: '" + c.capability + "'");
        }
    }

    const std::vector<LadderRule>& rules() const { return rules_; }
    const Decimal& default_level() const { return default_level_; }

    /// Every capability named anywhere in the rules, sorted and unique.
    std::vector<std::string> referenced_capabilities() const {
        std::vector<std::string> caps;
        for (const auto& r : rules_)
            for (const auto& c : r.conditions) caps.push_back(c.capability);
        std::sort(caps.begin(), caps.end());
        caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
        return caps;
    }

    /// The finite set of levels this ladder can produce.
    std::vector<Decimal> declared_levels() const {
        std::vector<Decimal> levels{default_level_};
        for (const auto& r : rules_) levels.push_back(r.level);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        return levels;
    }

    Decimal evaluate(const std::map<std::string, Decimal>& values) const {
        for (const auto& rule : rules_) {
            bool match = true;
            for (const auto& cond : rule.conditions) {
                auto it = values.find(cond.capability);
                if (it == values.end() || !cond.contains(it->second)) {
                    match = false;
                    break;
                }
            }
            if (match) return rule.level;
        }
        return default_level_;
    }

    friend bool operator==(const TrustLadder&, const TrustLadder&) = default;

private:
    std::vector<LadderRule> rules_;
    Decimal default_level_;
};

struct CapabilityMeasurement {
    std::string capability;
    Decimal value;
    Timestamp at;
    std::optional<std::string> group;

    friend bool operator==(const CapabilityMeasurement&, const CapabilityMeasurement&) = default;
};

struct MeasurementEvent {
    std::string capability;
    Decimal value;
    std::optional<std::string> group;

    friend bool operator==(const MeasurementEvent&, const MeasurementEvent&) = default;
};

struct DeploymentEvent {
    friend bool operator==(const DeploymentEvent&, const DeploymentEvent&) = default;
};

/// Retraining is a redesign of the system's models; the measurements it
/// produces arrive as separate events at the same timestamp.
struct RetrainingEvent {
    std::string note;

    friend bool operator==(const RetrainingEvent&, const RetrainingEvent&) = default;
};

struct ProfileChangeEvent {
    TrustProfile new_profile;

    friend bool operator==(const ProfileChangeEvent&, const ProfileChangeEvent&) = default;
};

struct LifecycleEvent {
    Timestamp at;
    std::variant<DeploymentEvent, MeasurementEvent, RetrainingEvent, ProfileChangeEvent> payload;

    friend bool operator==(const LifecycleEvent&, const LifecycleEvent&) = default;
};

/// One system's full timeline: identity-fixed metadata plus the ordered
/// lifecycle events, anchored at the deployment time t0. Immutable after
/// construction; all evaluation is read-only.
class ArtifactHistory {
public:
    /// `events` in ingestion order; they are stably sorted by timestamp, so
    /// same-tick events keep their ingestion order. The deployment must come
    /// out first or the history is rejected.
    ArtifactHistory(std::string system_id, TechnoFunction techno_function,
                    TrustProfile initial_profile, TrustLadder ladder,
                    std::vector<LifecycleEvent> events)
        : system_id_(std::move(system_id)),
          techno_function_(std::move(techno_function)),
          initial_profile_(std::move(initial_profile)),
          ladder_(std::move(ladder)),
          events_(std::move(events)) {
        if (!is_identifier(system_id_)) throw Error("invalid system id: '" + system_id_ + "'");
        std::stable_sort(events_.begin(), events_.end(),
                         [](const auto& a, const auto& b) { return a.at < b.at; });
        std::size_t deployments = 0;
        for (const auto& e : events_)
            if (std::holds_alternative<DeploymentEvent>(e.payload)) ++deployments;
        if (deployments != 1)
            throw Error("history of '" + system_id_ + "' must have exactly one deployment");
        if (!std::holds_alternative<DeploymentEvent>(events_.front().payload))
            throw Error("deployment of '" + system_id_ + "' must be the earliest event");
    }

    const std::string& system_id() const { return system_id_; }
    const TechnoFunction& techno_function() const { return techno_function_; }
    const TrustProfile& initial_profile() const { return initial_profile_; }
    const TrustLadder& ladder() const { return ladder_; }
    const std::vector<LifecycleEvent>& events() const { return events_; }

    Timestamp t0() const { return events_.front().at; }

    void require_deployed(Timestamp t) const {
        if (t < t0())
            throw BeforeDeploymentError("query at " + std::to_string(t.ticks) + " precedes deployment of '" +
                                        system_id_ + "' at " + std::to_string(t0().ticks));
    }

    /// Profile in force at `t`: the initial profile overridden by the latest
    /// profile change at or before `t` (changes apply at their own timestamp).
    const TrustProfile& profile_at(Timestamp t) const {
        require_deployed(t);
        const TrustProfile* current = &initial_profile_;
        for (const auto& e : events_) {
            if (e.at > t) break;
            if (const auto* pc = std::get_if<ProfileChangeEvent>(&e.payload))
                current = &pc->new_profile;
        }
        return *current;
    }

private:
    std::string system_id_;
    TechnoFunction techno_function_;
    TrustProfile initial_profile_;
    TrustLadder ladder_;
    std::vector<LifecycleEvent> events_;
};

inline const TrustProfile& profile_at(const ArtifactHistory& h, Timestamp t) {
    return h.profile_at(t);
}

enum class FailedCondition { KindMismatch, ProfileMismatch, LevelMismatch, DeploymentMismatch, NoData };

inline std::string_view failed_condition_name(FailedCondition c) {
    switch (c) {
        case FailedCondition::KindMismatch: return "KindMismatch";
        case FailedCondition::ProfileMismatch: return "ProfileMismatch";
        case FailedCondition::LevelMismatch: return "LevelMismatch";
        case FailedCondition::DeploymentMismatch: return "DeploymentMismatch";
        case FailedCondition::NoData: return "NoData";
    }
    throw Error("unknown failed condition");
}

inline std::optional<FailedCondition> failed_condition_from_name(std::string_view s) {
    for (auto c : {FailedCondition::KindMismatch, FailedCondition::ProfileMismatch,
                   FailedCondition::LevelMismatch, FailedCondition::DeploymentMismatch,
                   FailedCondition::NoData})
        if (failed_condition_name(c) == s) return c;
    return std::nullopt;
}

/// Outcome of an identity or persistence query. Negative verdicts carry the
/// first violated condition in criterion order.
struct IdentityVerdict {
    bool identical = false;
    std::optional<FailedCondition> failed_condition;
    std::string details;

    static IdentityVerdict yes(std::string details = "") {
        return {true, std::nullopt, std::move(details)};
    }

    static IdentityVerdict no(FailedCondition cond, std::string details) {
        return {false, cond, std::move(details)};
    }
};

}  // namespace idem
