#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/metrics.hpp"

namespace ldcb {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

inline std::int64_t parse_int(const std::string& s, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad " + what + " '" + s + "'");
    }
}

}  // namespace detail

// "a > b > c" or "a>b>c". Every alternative exactly once.
inline Preference parse_preference(const std::string& text, const AlternativeSet& alts, int line = 0) {
    Preference p;
    std::vector<char> seen(alts.size(), 0);
    std::string rest = text;
    std::size_t from = 0;
    while (true) {
        auto gt = rest.find('>', from);
        std::string tok = detail::trim(rest.substr(from, gt == std::string::npos ? std::string::npos : gt - from));
        if (tok.empty()) throw ParseError(line, "empty alternative in preference");
        if (!alts.contains(tok)) throw ParseError(line, "unknown alternative '" + tok + "'");
        Alt a = alts.index(tok);
        if (seen[a]) throw ParseError(line, "alternative '" + tok + "' appears twice");
        seen[a] = 1;
        p.order.push_back(a);
        if (gt == std::string::npos) break;
        from = gt + 1;
    }
    for (Alt a = 0; a < alts.size(); ++a)
        if (!seen[a]) throw ParseError(line, "preference is missing alternative '" + alts.name(a) + "'");
    return p;
}

inline std::string render_preference(const Preference& p, const AlternativeSet& alts) {
    std::string s;
    for (int j = 0; j < p.size(); ++j) {
        if (j) s += " > ";
        s += alts.name(p.order[j]);
    }
    return s;
}

inline VotingRule parse_rule(const std::string& text, int line = 0) {
    auto t = detail::split_ws(text);
    if (t.empty()) throw ParseError(line, "missing rule");
    const std::string& k = t[0];
    auto arity = [&](std::size_t want) {
        if (t.size() != want) throw ParseError(line, "rule '" + k + "' takes " + std::to_string(want - 1) + " argument(s)");
    };
    if (k == "plurality") return arity(1), VotingRule::plurality();
    if (k == "veto") return arity(1), VotingRule::veto();
    if (k == "borda") return arity(1), VotingRule::borda();
    if (k == "maximin") return arity(1), VotingRule::maximin();
    if (k == "bucklin") return arity(1), VotingRule::bucklin();
    if (k == "sbucklin") return arity(1), VotingRule::simplified_bucklin();
    if (k == "kapproval") {
        arity(2);
        return VotingRule::k_approval(static_cast<int>(detail::parse_int(t[1], line, "k")));
    }
    if (k == "positional") {
        arity(2);
        std::vector<std::int64_t> a;
        std::stringstream ss(t[1]);
        for (std::string x; std::getline(ss, x, ',');) a.push_back(detail::parse_int(x, line, "score"));
        return VotingRule::positional(std::move(a));
    }
    if (k == "copeland") {
        arity(2);
        auto slash = t[1].find('/');
        if (slash == std::string::npos) throw ParseError(line, "copeland takes P/Q");
        Rational r{detail::parse_int(t[1].substr(0, slash), line, "numerator"),
                   detail::parse_int(t[1].substr(slash + 1), line, "denominator")};
        return VotingRule::copeland(r);
    }
    throw ParseError(line, "unknown rule '" + k + "'");
}

inline std::string render_rule(const VotingRule& r) {
    switch (r.kind) {
        case RuleKind::Plurality: return "plurality";
        case RuleKind::Veto: return "veto";
        case RuleKind::KApproval: return "kapproval " + std::to_string(r.k);
        case RuleKind::Borda: return "borda";
        case RuleKind::Maximin: return "maximin";
        case RuleKind::Bucklin: return "bucklin";
        case RuleKind::SimplifiedBucklin: return "sbucklin";
        case RuleKind::Copeland:
            return "copeland " + std::to_string(r.copeland_alpha.num) + "/" + std::to_string(r.copeland_alpha.den);
        case RuleKind::Positional: {
            std::string s = "positional ";
            for (std::size_t i = 0; i < r.alpha.size(); ++i) s += (i ? "," : "") + std::to_string(r.alpha[i]);
            return s;
        }
    }
    return "?";
}

inline Metric parse_metric(const std::string& s, int line = 0) {
    for (Metric d : kAllMetrics)
        if (s == metric_name(d)) return d;
    throw ParseError(line, "unknown metric '" + s + "' (swap, footrule or maxdisp)");
}

inline BriberyInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::optional<VotingRule> rule;
    std::optional<Metric> metric;
    std::optional<AlternativeSet> alts;
    std::optional<std::string> target;
    std::optional<std::int64_t> budget;
    int rule_line = 0, target_line = 0;
    BriberyInstance out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = detail::trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(line, "expected 'key: value'");
        const std::string key = detail::trim(s.substr(0, colon));
        const std::string val = detail::trim(s.substr(colon + 1));
        auto once = [&](bool already) {
            if (already) throw ParseError(line, "duplicate '" + key + "' line");
        };
        if (key == "rule") {
            once(rule.has_value());
            rule = parse_rule(val, line);
            rule_line = line;
        } else if (key == "metric") {
            once(metric.has_value());
            metric = parse_metric(val, line);
        } else if (key == "alternatives") {
            once(alts.has_value());
            auto names = detail::split_ws(val);
            if (names.empty()) throw ParseError(line, "no alternatives");
            for (const auto& nm : names)
                if (nm.find('>') != std::string::npos) throw ParseError(line, "alternative names cannot contain '>'");
            try {
                alts = AlternativeSet(names);
            } catch (const InvalidInput& e) {
                throw ParseError(line, e.what());
            }
        } else if (key == "target") {
            once(target.has_value());
            target = val;
            target_line = line;
        } else if (key == "budget") {
            once(budget.has_value());
            budget = detail::parse_int(val, line, "budget");
            if (*budget < 0) throw ParseError(line, "budget must be non-negative");
        } else if (key == "voter") {
            if (!alts) throw ParseError(line, "voter line before the alternatives line");
            // voter: delta=2 price=1 : a > b > c. The ':' after the fields separates the preference.
            auto sep = val.find(':');
            if (sep == std::string::npos) throw ParseError(line, "voter line needs 'fields : preference'");
            std::optional<std::int64_t> delta, price;
            for (const auto& f : detail::split_ws(val.substr(0, sep))) {
                auto eq = f.find('=');
                if (eq == std::string::npos) throw ParseError(line, "bad voter field '" + f + "'");
                std::string k = f.substr(0, eq), v = f.substr(eq + 1);
                if (k == "delta" && !delta) delta = detail::parse_int(v, line, "delta");
                else if (k == "price" && !price) price = detail::parse_int(v, line, "price");
                else throw ParseError(line, "unexpected voter field '" + k + "'");
            }
            if (!delta) throw ParseError(line, "voter line needs delta=");
            if (*delta < 0 || price.value_or(0) < 0) throw ParseError(line, "delta and price must be non-negative");
            out.profile.prefs.push_back(parse_preference(val.substr(sep + 1), *alts, line));
            out.deltas.push_back(*delta);
            out.prices.push_back(price.value_or(0));
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
    }
    if (!rule) throw ParseError(0, "missing 'rule' line");
    if (!metric) throw ParseError(0, "missing 'metric' line");
    if (!alts) throw ParseError(0, "missing 'alternatives' line");
    if (!target) throw ParseError(0, "missing 'target' line");
    if (out.profile.prefs.empty()) throw ParseError(0, "no voter lines");
    if (!alts->contains(*target)) throw ParseError(target_line, "target '" + *target + "' is not an alternative");
    out.profile.alts = *alts;
    out.target = alts->index(*target);
    out.rule = *rule;
    out.metric = *metric;
    out.budget = budget.value_or(0);
    try {
        out.rule.validate(out.m());
    } catch (const InvalidInput& e) {
        throw ParseError(rule_line, e.what());
    }
    out.validate();
    return out;
}

inline std::string render_instance(const BriberyInstance& in) {
    std::string s;
    s += "rule: " + render_rule(in.rule) + "\n";
    s += "metric: " + std::string(metric_name(in.metric)) + "\n";
    s += "alternatives:";
    for (const auto& nm : in.profile.alts.names()) s += " " + nm;
    s += "\n";
    s += "target: " + in.profile.alts.name(in.target) + "\n";
    s += "budget: " + std::to_string(in.budget) + "\n";
    for (int i = 0; i < in.n(); ++i)
        s += "voter: delta=" + std::to_string(in.deltas[i]) + " price=" + std::to_string(in.prices[i]) + " : " +
             render_preference(in.profile.prefs[i], in.profile.alts) + "\n";
    return s;
}

// Result block shared by solve/oracle/witness and read back by verify.
inline std::string render_outcome(const BriberyInstance& in, const BriberyOutcome& o) {
    std::string s = std::string("decision: ") + (o.yes ? "YES" : "NO") + "\n";
    if (!o.yes) return s;
    s += "cost: " + std::to_string(o.total_price) + "\n";
    s += "bribed:";
    for (int i : o.bribed) s += " " + std::to_string(i);
    s += "\n";
    for (const auto& p : o.witness->prefs) s += "pref: " + render_preference(p, in.profile.alts) + "\n";
    return s;
}

// Reads the `pref:` lines of a result block; other lines are ignored.
inline Profile parse_witness_block(const std::string& text, const AlternativeSet& alts) {
    std::istringstream in(text);
    Profile p;
    p.alts = alts;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = detail::trim(raw);
        if (s.rfind("pref:", 0) != 0) continue;
        p.prefs.push_back(parse_preference(s.substr(5), alts, line));
    }
    if (p.prefs.empty()) throw ParseError(0, "no 'pref:' lines in witness");
    return p;
}

}  // namespace ldcb
