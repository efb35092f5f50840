#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"

namespace ldcb {

enum class Metric { Swap, Footrule, MaxDisplacement };

inline constexpr Metric kAllMetrics[] = {Metric::Swap, Metric::Footrule, Metric::MaxDisplacement};

inline const char* metric_name(Metric d) {
    switch (d) {
        case Metric::Swap: return "swap";
        case Metric::Footrule: return "footrule";
        case Metric::MaxDisplacement: return "maxdisp";
    }
    return "?";
}

namespace detail {

inline void check_same_domain(const Preference& p, const Preference& q) {
    if (p.size() != q.size()) throw InvalidInput("preferences have different lengths");
    if (!p.is_permutation_of(p.size()) || !q.is_permutation_of(q.size()))
        throw InvalidInput("preferences are not permutations of the same alternative set");
}

// Inversions of q relative to p, O(m log m).
inline std::int64_t inversions(const Preference& p, const Preference& q) {
    const int m = p.size();
    auto qpos = q.positions();
    std::vector<int> seq(m);
    for (int i = 0; i < m; ++i) seq[i] = qpos[p.order[i]];
    std::vector<int> bit(m + 1, 0);
    std::int64_t inv = 0;
    for (int i = m - 1; i >= 0; --i) {
        for (int x = seq[i] - 1; x > 0; x -= x & -x) inv += bit[x];
        for (int x = seq[i]; x <= m; x += x & -x) ++bit[x];
    }
    return inv;
}

}  // namespace detail

inline std::int64_t distance(Metric d, const Preference& p, const Preference& q) {
    detail::check_same_domain(p, q);
    if (d == Metric::Swap) return detail::inversions(p, q);
    auto pp = p.positions();
    auto qp = q.positions();
    std::int64_t acc = 0;
    for (std::size_t a = 0; a < pp.size(); ++a) {
        std::int64_t diff = std::abs(pp[a] - qp[a]);
        acc = d == Metric::Footrule ? acc + diff : std::max(acc, diff);
    }
    return acc;
}

inline constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;

inline std::uint64_t saturating_factorial(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) {
        if (f > kSaturated / static_cast<std::uint64_t>(i)) return kSaturated;
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

// Over-estimate of |ball|. Exact for swap (Mahonian numbers); footrule uses the swap ball of the
// same radius since swap <= footrule; max-displacement uses (2r+1)^m.
inline std::uint64_t ball_size_bound(int m, Metric d, std::int64_t radius) {
    if (m <= 0 || radius < 0) return radius < 0 ? 0 : 1;
    const std::uint64_t full = saturating_factorial(m);
    const std::int64_t max_inv = static_cast<std::int64_t>(m) * (m - 1) / 2;
    if (d == Metric::MaxDisplacement) {
        if (radius >= m - 1) return full;
        std::uint64_t b = 1;
        for (int i = 0; i < m; ++i) {
            b *= static_cast<std::uint64_t>(2 * radius + 1);
            if (b >= full) return full;
        }
        return b;
    }
    if (radius >= max_inv) return full;
    // dp[k] = number of permutations of the first i items with exactly k inversions, saturated.
    const int r = static_cast<int>(radius);
    std::vector<std::uint64_t> dp(r + 1, 0), nx(r + 1, 0);
    dp[0] = 1;
    for (int i = 1; i <= m; ++i) {
        std::uint64_t window = 0;
        for (int k = 0; k <= r; ++k) {
            window += dp[k];
            if (k - i >= 0) window -= dp[k - i];
            nx[k] = std::min(window, kSaturated);
        }
        std::swap(dp, nx);
    }
    std::uint64_t total = 0;
    for (auto v : dp) total = std::min(total + v, kSaturated);
    return std::min(total, full);
}

namespace detail {

// Lexicographic backtracking over the ball with metric-specific pruning.
class BallWalker {
public:
    BallWalker(const Preference& p, Metric d, std::int64_t r, const std::function<void(const Preference&)>& f)
        : m_(p.size()), d_(d), r_(r), home_(p.positions()), emit_(f) {
        for (auto& h : home_) --h;
        used_.assign(m_, 0);
        cur_.order.assign(m_, 0);
    }

    void run() { rec(0, 0); }

private:
    void rec(int j, std::int64_t spent) {
        if (j == m_) {
            emit_(cur_);
            return;
        }
        if (d_ == Metric::MaxDisplacement) {
            int forced = -1;
            for (int b = 0; b < m_; ++b)
                if (!used_[b] && home_[b] + r_ < j) return;
                else if (!used_[b] && home_[b] + r_ == j) {
                    if (forced >= 0) return;
                    forced = b;
                }
            if (forced >= 0) {
                place(j, forced, spent);
                return;
            }
        }
        for (int a = 0; a < m_; ++a) {
            if (used_[a]) continue;
            place(j, a, spent);
        }
    }

    void place(int j, int a, std::int64_t spent) {
        std::int64_t cost = 0;
        switch (d_) {
            case Metric::Swap:
                for (int b = 0; b < m_; ++b)
                    if (!used_[b] && b != a && home_[b] < home_[a]) ++cost;
                break;
            case Metric::Footrule: cost = std::abs(j - home_[a]); break;
            case Metric::MaxDisplacement:
                if (std::abs(j - home_[a]) > r_) return;
                break;
        }
        std::int64_t total = spent + cost;
        if (d_ != Metric::MaxDisplacement && total > r_) return;
        used_[a] = 1;
        if (d_ == Metric::Footrule) {
            // Every unplaced alternative whose home lies before the next slot must still travel.
            std::int64_t lb = 0;
            for (int b = 0; b < m_; ++b)
                if (!used_[b] && home_[b] < j + 1) lb += j + 1 - home_[b];
            if (total + lb > r_) {
                used_[a] = 0;
                return;
            }
        }
        cur_.order[j] = a;
        rec(j + 1, total);
        used_[a] = 0;
    }

    int m_;
    Metric d_;
    std::int64_t r_;
    std::vector<int> home_;
    std::vector<char> used_;
    Preference cur_;
    const std::function<void(const Preference&)>& emit_;
};

}  // namespace detail

inline constexpr int kFilterMaxM = 8;

// Visits every q with distance(d, p, q) <= radius in lexicographic order of q.order.
inline void for_each_in_ball(const Preference& p, Metric d, std::int64_t radius,
                             const std::function<void(const Preference&)>& f, bool force_backtrack = false) {
    if (radius < 0) return;
    if (!p.is_permutation_of(p.size())) throw InvalidInput("ball centre is not a permutation");
    if (p.size() <= kFilterMaxM && !force_backtrack) {
        Preference q = Preference::identity(p.size());
        do {
            if (distance(d, p, q) <= radius) f(q);
        } while (std::next_permutation(q.order.begin(), q.order.end()));
        return;
    }
    detail::BallWalker(p, d, radius, f).run();
}

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

inline std::vector<Preference> ball(const Preference& p, Metric d, std::int64_t radius,
                                    std::size_t cap = kDefaultBallCap, bool force_backtrack = false) {
    std::vector<Preference> out;
    struct Stop {};
    try {
        for_each_in_ball(
            p, d, radius,
            [&](const Preference& q) {
                if (out.size() >= cap) throw Stop{};
                out.push_back(q);
            },
            force_backtrack);
    } catch (Stop&) {
        throw ResourceExceeded("ball", "ball exceeds the cap of " + std::to_string(cap) + " preferences");
    }
    return out;
}

}  // namespace ldcb
