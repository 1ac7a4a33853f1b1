#include "zdpp/structures.hpp"

#include <algorithm>
#include <functional>

namespace zdpp {

int Structure::fragments() const {
    int m = -1;
    for (int f : fragment_of) m = std::max(m, f);
    return m + 1;
}

int Structure::vertical_blocks() const {
    int v = 0;
    for (BlockKind k : kind)
        if (k == BlockKind::Vertical) ++v;
    return v;
}

std::vector<std::pair<int, int>> FilledStructure::fragment_numbers() const {
    const int d = structure.fragments();
    std::vector<std::pair<int, int>> pq(d, {0, 0});
    for (int f = 0; f < d; ++f) pq[f] = hook_fill[f];
    for (int pos = 0; pos < structure.blocks(); ++pos) {
        int f = structure.fragment_of[pos];
        if (structure.kind[pos] == BlockKind::Horizontal)
            pq[f].first += cardinality[pos];
        else if (structure.kind[pos] == BlockKind::Vertical)
            pq[f].second += cardinality[pos];
    }
    return pq;
}

int FilledStructure::sign() const {
    auto pq = fragment_numbers();
    const int d = static_cast<int>(pq.size());
    int s = 1;
    long qsum = 0;
    for (int i = 0; i < d; ++i) {
        qsum += pq[i].second;
        for (int j = i + 1; j < d; ++j) {
            int dp = pq[i].first - pq[j].first;
            int dq = pq[i].second - pq[j].second;
            if (dp == 0 || dq == 0) return 0;
            if (dp < 0) s = -s;
            if (dq < 0) s = -s;
        }
    }
    if ((qsum + structure.vertical_blocks()) % 2) s = -s;
    return s;
}

bool FilledStructure::proper() const {
    const int n = structure.blocks();
    const int d = structure.fragments();
    // prefix filling numbers; fragments enter when their hook appears
    for (int k = 1; k <= n; ++k) {
        std::vector<int> P, Q;
        std::vector<char> seen(d, 0);
        std::vector<std::pair<int, int>> pq(d, {0, 0});
        for (int pos = 0; pos < k; ++pos) {
            int f = structure.fragment_of[pos];
            switch (structure.kind[pos]) {
                case BlockKind::Hook:
                    seen[f] = 1;
                    pq[f] = hook_fill[f];
                    break;
                case BlockKind::Horizontal: pq[f].first  += cardinality[pos]; break;
                case BlockKind::Vertical:   pq[f].second += cardinality[pos]; break;
            }
        }
        for (int f = 0; f < d; ++f)
            if (seen[f]) {
                P.push_back(pq[f].first);
                Q.push_back(pq[f].second);
            }
        std::sort(P.begin(), P.end());
        std::sort(Q.begin(), Q.end());
        if (std::adjacent_find(P.begin(), P.end()) != P.end()) return false;
        if (std::adjacent_find(Q.begin(), Q.end()) != Q.end()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
std::vector<Structure> enumerate_structures(int n) {
    if (n < 1 || n > 8) throw SizeGuard("enumerate_structures: need 1 <= n <= 8");
    std::vector<Structure> out;
    Structure cur;
    cur.fragment_of.assign(n, -1);
    cur.kind.assign(n, BlockKind::Hook);
    // assign positions left to right; position may open a new fragment (hook)
    // or join an existing one as horizontal/vertical
    std::function<void(int, int)> rec = [&](int pos, int nfrag) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        cur.fragment_of[pos] = nfrag;
        cur.kind[pos] = BlockKind::Hook;
        rec(pos + 1, nfrag + 1);
        for (int f = 0; f < nfrag; ++f) {
            cur.fragment_of[pos] = f;
            cur.kind[pos] = BlockKind::Horizontal;
            rec(pos + 1, nfrag);
            cur.kind[pos] = BlockKind::Vertical;
            rec(pos + 1, nfrag);
        }
    };
    rec(0, 0);
    return out;
}

// ---------------------------------------------------------------------------
namespace {

template <typename Fn>
void for_each_filling(const Structure& T, const std::vector<int>& rho, Fn&& fn) {
    const int d = T.fragments();
    std::vector<int> hookpos(d, -1);
    for (int pos = 0; pos < T.blocks(); ++pos)
        if (T.kind[pos] == BlockKind::Hook) hookpos[T.fragment_of[pos]] = pos;
    FilledStructure F;
    F.structure = T;
    F.cardinality = rho;
    F.hook_fill.assign(d, {0, 0});
    std::function<void(int)> rec = [&](int f) {
        if (f == d) {
            fn(F);
            return;
        }
        int c = rho[hookpos[f]];
        for (int p = 0; p < c; ++p) {
            F.hook_fill[f] = {p, c - 1 - p};
            rec(f + 1);
        }
    };
    rec(0);
}

}  // namespace

std::map<std::pair<std::vector<int>, std::vector<int>>, long long>
structure_character_table(const CycleType& rho, bool proper_only) {
    const int n = static_cast<int>(rho.rho.size());
    std::map<std::pair<std::vector<int>, std::vector<int>>, long long> acc;
    for (const Structure& T : enumerate_structures(n)) {
        for_each_filling(T, rho.rho, [&](const FilledStructure& F) {
            int s = F.sign();
            if (s == 0) return;
            if (proper_only && !F.proper()) return;
            auto pq = F.fragment_numbers();
            std::vector<int> P, Q;
            P.reserve(pq.size());
            Q.reserve(pq.size());
            for (auto& [pp, qq] : pq) {
                P.push_back(pp);
                Q.push_back(qq);
            }
            std::sort(P.rbegin(), P.rend());
            std::sort(Q.rbegin(), Q.rend());
            acc[{std::move(P), std::move(Q)}] += s;
        });
    }
    return acc;
}

long long structure_character(const Partition& lam, const CycleType& rho,
                              bool proper_only) {
    if (lam.size() != rho.size())
        throw SizeMismatch("structure_character: |lambda| != sum(rho)");
    if (static_cast<int>(rho.rho.size()) > 8)
        throw SizeGuard("structure_character: more than 8 blocks");
    FrobeniusCoords fc = frobenius(lam);
    long long total = 0;
    for (const Structure& T : enumerate_structures(static_cast<int>(rho.rho.size()))) {
        if (T.fragments() != fc.d()) continue;
        for_each_filling(T, rho.rho, [&](const FilledStructure& F) {
            int s = F.sign();
            if (s == 0) return;
            if (proper_only && !F.proper()) return;
            auto pq = F.fragment_numbers();
            std::vector<int> P, Q;
            for (auto& [pp, qq] : pq) {
                P.push_back(pp);
                Q.push_back(qq);
            }
            std::sort(P.rbegin(), P.rend());
            std::sort(Q.rbegin(), Q.rend());
            if (P == fc.p && Q == fc.q) total += s;
        });
    }
    return total;
}

}  // namespace zdpp
