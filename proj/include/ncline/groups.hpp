#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncline/rational.hpp"

namespace ncline {

// A finite group as an explicit multiplication table, or a symbolic
// description with an order formula when a table is pointless or infinite.
struct GroupDescription {
    enum class Kind { Finite, Symbolic };
    Kind kind = Kind::Finite;

    // finite
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;
    int identity = -1;

    // symbolic
    std::string name;
    std::map<std::string, std::string> params;
    std::optional<Int> order_value;  // known order, if any

    bool finite() const { return kind == Kind::Finite; }
    Int order() const {
        if (finite()) return (Int)labels.size();
        if (order_value) return *order_value;
        throw InvalidInput("group order is not known");
    }

    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const {
        for (int b = 0; b < (int)labels.size(); ++b)
            if (table[a][b] == identity) return b;
        throw InternalError("group element has no inverse");
    }

    void validate() const {
        if (!finite()) return;
        int n = (int)labels.size();
        if ((int)table.size() != n) throw InternalError("group table has wrong shape");
        if (identity < 0 || identity >= n) throw InternalError("group identity missing");
        for (int a = 0; a < n; ++a) {
            if ((int)table[a].size() != n) throw InternalError("group table has wrong shape");
            if (table[a][identity] != a || table[identity][a] != a)
                throw InternalError("group identity fails");
            bool has_inv = false;
            for (int b = 0; b < n; ++b) {
                if (table[a][b] < 0 || table[a][b] >= n)
                    throw InternalError("group table entry out of range");
                if (table[a][b] == identity) has_inv = true;
            }
            if (!has_inv) throw InternalError("group element has no inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw InternalError("group table is not associative");
    }

    bool is_abelian() const {
        int n = (int)labels.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (table[a][b] != table[b][a]) return false;
        return true;
    }

    std::vector<int> element_orders() const {
        std::vector<int> out;
        for (int a = 0; a < (int)labels.size(); ++a) {
            int x = a, ord = 1;
            while (x != identity) {
                x = table[x][a];
                ++ord;
            }
            out.push_back(ord);
        }
        return out;
    }
};

/// Build a finite group from abstract elements with a composition callback.
template <class E, class ComposeFn, class EqFn, class LabelFn>
GroupDescription group_from_elements(const std::vector<E>& els, ComposeFn&& comp, EqFn&& eq,
                                     LabelFn&& label, int identity_index) {
    GroupDescription g;
    g.kind = GroupDescription::Kind::Finite;
    int n = (int)els.size();
    for (auto& e : els) g.labels.push_back(label(e));
    g.identity = identity_index;
    g.table.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            E c = comp(els[a], els[b]);
            for (int i = 0; i < n; ++i)
                if (eq(c, els[i])) {
                    g.table[a][b] = i;
                    break;
                }
            if (g.table[a][b] < 0) throw InternalError("set not closed under composition");
        }
    g.validate();
    return g;
}

/// Semidirect product N x| H where theta(h) is an automorphism of N given as
/// a permutation of its element indices: (n1,h1)(n2,h2) = (n1 theta_{h1}(n2), h1 h2).
inline GroupDescription semidirect_product(const GroupDescription& n, const GroupDescription& h,
                                           const std::function<std::vector<int>(int)>& theta) {
    if (!n.finite() || !h.finite()) throw InvalidInput("semidirect product needs finite factors");
    GroupDescription g;
    g.kind = GroupDescription::Kind::Finite;
    int nn = (int)n.labels.size(), nh = (int)h.labels.size();
    auto idx = [&](int a, int s) { return a * nh + s; };
    std::vector<std::vector<int>> th;
    for (int s = 0; s < nh; ++s) th.push_back(theta(s));
    for (int a = 0; a < nn; ++a)
        for (int s = 0; s < nh; ++s)
            g.labels.push_back("(" + n.labels[a] + ", " + h.labels[s] + ")");
    g.identity = idx(n.identity, h.identity);
    g.table.assign(nn * nh, std::vector<int>(nn * nh, -1));
    for (int a1 = 0; a1 < nn; ++a1)
        for (int s1 = 0; s1 < nh; ++s1)
            for (int a2 = 0; a2 < nn; ++a2)
                for (int s2 = 0; s2 < nh; ++s2)
                    g.table[idx(a1, s1)][idx(a2, s2)] =
                        idx(n.mul(a1, th[s1][a2]), h.mul(s1, s2));
    g.validate();
    return g;
}

}  // namespace ncline
