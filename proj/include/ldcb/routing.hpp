#pragma once

#include <string>

#include "ldcb/bribery.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/oracle.hpp"
#include "ldcb/poly_solvers.hpp"

namespace ldcb {

enum class Route { Trivial, Plurality, Veto, KappSmallRadius, KappMaxdisp, SbucklinSmallRadius, SbucklinMaxdisp, Hard };

inline const char* route_name(Route r) {
    switch (r) {
        case Route::Trivial: return "trivial";
        case Route::Plurality: return "plurality-flow";
        case Route::Veto: return "veto-flow";
        case Route::KappSmallRadius: return "kapproval-small-radius-flow";
        case Route::KappMaxdisp: return "kapproval-maxdisp-flow";
        case Route::SbucklinSmallRadius: return "sbucklin-small-radius-flow";
        case Route::SbucklinMaxdisp: return "sbucklin-maxdisp-flow";
        case Route::Hard: return "exact-oracle";
    }
    return "?";
}

struct RouteDecision {
    Route route = Route::Hard;
    std::string why;  // for Hard: the reason no polynomial algorithm applies
};

// Complexity classification of (rule, metric, radius profile, prices).
inline RouteDecision route(const BriberyInstance& in) {
    in.validate();
    if (in.m() == 1 || in.max_delta() == 0) return {Route::Trivial, "no voter can move"};
    if (is_plurality_like(in)) return {Route::Plurality, ""};
    if (is_veto_like(in)) return {Route::Veto, ""};

    const bool kapp = in.rule.kind == RuleKind::KApproval;
    const bool sb = in.rule.kind == RuleKind::SimplifiedBucklin;
    const std::string rule = kapp ? "k-approval" : sb ? "simplified Bucklin" : "";
    const std::string where = " with " + std::string(metric_name(in.metric)) + " distance at delta " +
                              std::to_string(in.max_delta());
    if (kapp || sb) {
        if (small_radius_ok(in)) return {kapp ? Route::KappSmallRadius : Route::SbucklinSmallRadius, ""};
        if (in.metric == Metric::MaxDisplacement && in.is_ldcb_form())
            return {kapp ? Route::KappMaxdisp : Route::SbucklinMaxdisp, ""};
        if (in.metric == Metric::MaxDisplacement)
            return {Route::Hard, rule + where + " with prices or per-voter radii is NP-complete"};
        return {Route::Hard, rule + where + " is NP-complete"};
    }
    std::string name = in.rule.kind == RuleKind::Borda       ? "Borda"
                       : in.rule.kind == RuleKind::Maximin   ? "maximin"
                       : in.rule.kind == RuleKind::Copeland  ? "Copeland"
                       : in.rule.kind == RuleKind::Bucklin   ? "Bucklin"
                       : in.rule.kind == RuleKind::Positional ? "this scoring rule"
                                                              : "this rule";
    return {Route::Hard, name + where + " is NP-complete"};
}

inline BriberyOutcome solve_trivial(const BriberyInstance& in) {
    if (is_unique_winner(in.profile, in.rule, in.target)) return accept_witness(in, in.profile);
    return {};
}

// Runs the routed polynomial solver. Hard cells need allow_oracle, otherwise UnsupportedParameters.
inline BriberyOutcome solve_auto(const BriberyInstance& in, bool allow_oracle, const OracleBudget& lim = {},
                                 Route* used = nullptr) {
    auto r = route(in);
    if (used) *used = r.route;
    switch (r.route) {
        case Route::Trivial: return solve_trivial(in);
        case Route::Plurality: return solve_plurality(in);
        case Route::Veto: return solve_veto(in);
        case Route::KappSmallRadius: return solve_kapproval_small_radius(in);
        case Route::KappMaxdisp: return solve_kapproval_maxdisp(in);
        case Route::SbucklinSmallRadius: return solve_sbucklin_small_radius(in);
        case Route::SbucklinMaxdisp: return solve_sbucklin_maxdisp(in);
        case Route::Hard: break;
    }
    if (!allow_oracle) throw UnsupportedParameters(r.why + "; pass --oracle to run the exponential exact search");
    return solve_exhaustive(in, lim);
}

}  // namespace ldcb
