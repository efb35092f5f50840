#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldcb/errors.hpp"

namespace ldcb {

// Literals use DIMACS convention: +v / -v for variable v in 1..vars.
struct Sat3B2Instance {
    int vars = 0;
    std::vector<std::array<int, 3>> clauses;

    int n() const { return vars; }
    int m() const { return static_cast<int>(clauses.size()); }

    // Throws InvalidInput naming the first problem found.
    void validate() const {
        if (vars <= 0) throw InvalidInput("formula needs at least one variable");
        std::vector<int> pos(vars + 1, 0), neg(vars + 1, 0);
        for (std::size_t j = 0; j < clauses.size(); ++j) {
            const auto& cl = clauses[j];
            for (int r = 0; r < 3; ++r) {
                int l = cl[r];
                if (l == 0 || std::abs(l) > vars)
                    throw InvalidInput("clause " + std::to_string(j + 1) + " has literal " + std::to_string(l) +
                                       " outside 1.." + std::to_string(vars));
                for (int s = 0; s < r; ++s) {
                    if (cl[s] == l) throw InvalidInput("clause " + std::to_string(j + 1) + " repeats literal " + std::to_string(l));
                    if (cl[s] == -l) throw InvalidInput("clause " + std::to_string(j + 1) + " is tautological");
                }
                (l > 0 ? pos : neg)[std::abs(l)]++;
            }
            auto key = cl;
            std::sort(key.begin(), key.end());
            for (std::size_t i = 0; i < j; ++i) {
                auto other = clauses[i];
                std::sort(other.begin(), other.end());
                if (other == key)
                    throw InvalidInput("clause " + std::to_string(j + 1) + " repeats clause " + std::to_string(i + 1));
            }
        }
        for (int v = 1; v <= vars; ++v) {
            if (pos[v] != 2)
                throw InvalidInput("literal x" + std::to_string(v) + " occurs " + std::to_string(pos[v]) + " times, expected 2");
            if (neg[v] != 2)
                throw InvalidInput("literal -x" + std::to_string(v) + " occurs " + std::to_string(neg[v]) + " times, expected 2");
        }
    }

    // The two clauses (indices) containing literal l, ascending.
    std::array<int, 2> occurrences(int l) const {
        std::array<int, 2> out{-1, -1};
        int k = 0;
        for (int j = 0; j < m(); ++j)
            for (int x : clauses[j])
                if (x == l && k < 2) out[k++] = j;
        return out;
    }

    bool satisfied_by(const std::vector<int>& assignment) const {
        for (const auto& cl : clauses) {
            bool ok = false;
            for (int l : cl) ok = ok || (assignment[std::abs(l) - 1] == (l > 0 ? 1 : 0));
            if (!ok) return false;
        }
        return true;
    }

    friend bool operator==(const Sat3B2Instance&, const Sat3B2Instance&) = default;
};

inline std::string render_dimacs(const Sat3B2Instance& s) {
    std::ostringstream os;
    os << "p cnf " << s.vars << " " << s.m() << "\n";
    for (const auto& cl : s.clauses) os << cl[0] << " " << cl[1] << " " << cl[2] << " 0\n";
    return os.str();
}

// DIMACS text; clauses may span lines and are terminated by 0. Validates the occurrence pattern.
inline Sat3B2Instance parse_and_validate_3b2(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<std::pair<int, int>> header;
    Sat3B2Instance s;
    std::vector<int> cur;
    int cur_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c' || tok[0] == '%') continue;
        if (tok == "p") {
            std::string fmt;
            int v, c;
            if (header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v <= 0 || c < 0)
                throw ParseError(line_no, "malformed problem line");
            header = {v, c};
            s.vars = v;
            continue;
        }
        if (!header) throw ParseError(line_no, "clause before the problem line");
        do {
            int lit;
            try {
                std::size_t used;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad literal '" + tok + "'");
            }
            if (lit == 0) {
                if (cur.size() != 3)
                    throw ParseError(cur_line ? cur_line : line_no,
                                     "clause " + std::to_string(s.m() + 1) + " has " + std::to_string(cur.size()) +
                                         " literals, expected 3");
                s.clauses.push_back({cur[0], cur[1], cur[2]});
                cur.clear();
                cur_line = 0;
            } else {
                if (cur.empty()) cur_line = line_no;
                if (std::abs(lit) > s.vars) throw ParseError(line_no, "literal " + tok + " exceeds the variable count");
                cur.push_back(lit);
            }
        } while (ls >> tok);
    }
    if (!header) throw ParseError(0, "missing problem line");
    if (!cur.empty()) throw ParseError(cur_line, "unterminated clause");
    if (s.m() != header->second)
        throw ParseError(0, "problem line announces " + std::to_string(header->second) + " clauses, found " +
                                std::to_string(s.m()));
    s.validate();
    return s;
}

inline constexpr int kMaxBruteForceVars = 20;

// All satisfying assignments, in increasing binary order (variable 1 is the most significant bit).
inline std::vector<std::vector<int>> all_satisfying_assignments(const Sat3B2Instance& s) {
    if (s.vars > kMaxBruteForceVars) throw InvalidInput("brute-force SAT is limited to 20 variables");
    std::vector<std::vector<int>> out;
    std::vector<int> a(s.vars);
    for (std::uint32_t mask = 0; mask < (1u << s.vars); ++mask) {
        for (int v = 0; v < s.vars; ++v) a[v] = (mask >> (s.vars - 1 - v)) & 1;
        if (s.satisfied_by(a)) out.push_back(a);
    }
    return out;
}

// Two copies side by side on disjoint variables.
inline Sat3B2Instance disjoint_double(const Sat3B2Instance& s) {
    Sat3B2Instance d = s;
    d.vars = 2 * s.vars;
    for (auto cl : s.clauses) {
        for (int& l : cl) l += l > 0 ? s.vars : -s.vars;
        d.clauses.push_back(cl);
    }
    return d;
}

// First valid, satisfiable formula over `vars` variables in the order that picks clauses from the
// sorted list of admissible 3-literal clauses by depth-first search.
inline std::optional<Sat3B2Instance> find_3b2_formula(int vars) {
    if (vars <= 0 || vars % 3 != 0 || vars > 9) return std::nullopt;
    const int m = 4 * vars / 3;
    std::vector<std::array<int, 3>> pool;
    std::vector<int> lits;
    for (int v = 1; v <= vars; ++v) {
        lits.push_back(v);
        lits.push_back(-v);
    }
    for (std::size_t a = 0; a < lits.size(); ++a)
        for (std::size_t b = a + 1; b < lits.size(); ++b)
            for (std::size_t c = b + 1; c < lits.size(); ++c) {
                int x = lits[a], y = lits[b], z = lits[c];
                if (std::abs(x) == std::abs(y) || std::abs(x) == std::abs(z) || std::abs(y) == std::abs(z)) continue;
                pool.push_back({x, y, z});
            }
    std::vector<int> cnt(2 * vars + 1, 0);
    auto idx = [&](int l) { return l > 0 ? l : vars - l; };
    Sat3B2Instance s;
    s.vars = vars;
    std::optional<Sat3B2Instance> found;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (found) return;
        if (s.m() == m) {
            bool ok = true;
            for (int v = 1; v <= vars; ++v) ok = ok && cnt[idx(v)] == 2 && cnt[idx(-v)] == 2;
            if (ok && !all_satisfying_assignments(s).empty()) found = s;
            return;
        }
        for (std::size_t p = from; p < pool.size() && !found; ++p) {
            const auto& cl = pool[p];
            bool fits = true;
            for (int l : cl) fits = fits && cnt[idx(l)] < 2;
            if (!fits) continue;
            for (int l : cl) ++cnt[idx(l)];
            s.clauses.push_back(cl);
            rec(p + 1);
            s.clauses.pop_back();
            for (int l : cl) --cnt[idx(l)];
        }
    };
    rec(0);
    return found;
}

}  // namespace ldcb
