#include "zdpp/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace zdpp {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw InvalidCoords("Partition: parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw InvalidCoords("Partition: parts must be weakly decreasing");
    }
}

int Partition::size() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

Partition Partition::conjugate() const {
    if (parts.empty()) return {};
    std::vector<int> c(parts[0], 0);
    for (int part : parts)
        for (int j = 0; j < part; ++j) ++c[j];
    return Partition(std::move(c));
}

std::string Partition::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ',';
        os << parts[i];
    }
    os << ')';
    return os.str();
}

int FrobeniusCoords::size() const {
    int s = 0;
    for (size_t i = 0; i < p.size(); ++i) s += p[i] + q[i] + 1;
    return s;
}

int CycleType::size() const {
    return std::accumulate(rho.begin(), rho.end(), 0);
}

// ---------------------------------------------------------------------------
// BigUInt, base 1e9.
// ---------------------------------------------------------------------------
BigUInt BigUInt::one() {
    BigUInt b;
    b.limbs = {1};
    return b;
}

void BigUInt::mul_small(std::uint64_t f) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs) {
        std::uint64_t v = static_cast<std::uint64_t>(limb) * f + carry;
        limb = static_cast<std::uint32_t>(v % 1000000000ull);
        carry = v / 1000000000ull;
    }
    while (carry) {
        limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000ull));
        carry /= 1000000000ull;
    }
}

void BigUInt::add(const BigUInt& other) {
    if (other.limbs.size() > limbs.size()) limbs.resize(other.limbs.size(), 0);
    std::uint32_t carry = 0;
    for (size_t i = 0; i < limbs.size(); ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(limbs[i]) + carry +
                          (i < other.limbs.size() ? other.limbs[i] : 0u);
        limbs[i] = static_cast<std::uint32_t>(v % 1000000000ull);
        carry = static_cast<std::uint32_t>(v / 1000000000ull);
    }
    if (carry) limbs.push_back(carry);
}

std::string BigUInt::str() const {
    std::ostringstream os;
    os << limbs.back();
    for (auto it = limbs.rbegin() + 1; it != limbs.rend(); ++it) {
        std::string s = std::to_string(*it);
        os << std::string(9 - s.size(), '0') << s;
    }
    return os.str();
}

bool BigUInt::fits_u64() const {
    return limbs.size() <= 2 ||
           (limbs.size() == 3 && limbs[2] <= 18u);  // 18446744073709551615
}

std::uint64_t BigUInt::to_u64() const {
    std::uint64_t v = 0;
    for (auto it = limbs.rbegin(); it != limbs.rend(); ++it)
        v = v * 1000000000ull + *it;
    return v;
}

// ---------------------------------------------------------------------------
// Enumeration in reverse lexicographic order: (n) first, (1^n) last.
// ---------------------------------------------------------------------------
static void enum_rec(int n, int maxp, std::vector<int>& cur,
                     std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(Partition{std::vector<int>(cur)});
        return;
    }
    for (int first = std::min(n, maxp); first >= 1; --first) {
        cur.push_back(first);
        enum_rec(n - first, first, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0 || n > 60) throw SizeGuard("enumerate_partitions: need 0 <= n <= 60");
    std::vector<Partition> out;
    std::vector<int> cur;
    enum_rec(n, n, cur, out);
    return out;
}

std::uint64_t partition_count(int n) {
    if (n < 0 || n > 60) throw SizeGuard("partition_count: need 0 <= n <= 60");
    // Euler pentagonal recurrence
    std::vector<std::uint64_t> p(n + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::uint64_t s = 0;
        for (int k = 1;; ++k) {
            long g1 = static_cast<long>(k) * (3 * k - 1) / 2;
            long g2 = static_cast<long>(k) * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            long sign = (k % 2) ? 1 : -1;
            if (g1 <= m) s += sign * static_cast<long long>(p[m - g1]);
            if (g2 <= m) s += sign * static_cast<long long>(p[m - g2]);
        }
        p[m] = s;
    }
    return p[n];
}

// ---------------------------------------------------------------------------
FrobeniusCoords frobenius(const Partition& lam) {
    FrobeniusCoords fc;
    Partition conj = lam.conjugate();
    int d = 0;
    while (d < lam.rows() && lam.parts[d] > d) ++d;
    fc.p.resize(d);
    fc.q.resize(d);
    for (int i = 0; i < d; ++i) {
        fc.p[i] = lam.parts[i] - i - 1;
        fc.q[i] = conj.parts[i] - i - 1;
    }
    return fc;
}

Partition from_frobenius(const FrobeniusCoords& fc) {
    const int d = fc.d();
    if (static_cast<int>(fc.q.size()) != d)
        throw InvalidCoords("from_frobenius: p and q lengths differ");
    if (d == 0) return {};
    for (int i = 0; i + 1 < d; ++i)
        if (fc.p[i] <= fc.p[i + 1] || fc.q[i] <= fc.q[i + 1])
            throw InvalidCoords("from_frobenius: coordinates must strictly decrease");
    for (int i = 0; i < d; ++i)
        if (fc.p[i] < 0 || fc.q[i] < 0)
            throw InvalidCoords("from_frobenius: coordinates must be nonnegative");
    // row i (0-based, i < d): length p_i + i + 1; column lengths from q
    std::vector<int> parts;
    for (int i = 0; i < d; ++i) parts.push_back(fc.p[i] + i + 1);
    // rows below the diagonal from conjugate data
    std::vector<int> collen(d);
    for (int i = 0; i < d; ++i) collen[i] = fc.q[i] + i + 1;
    int maxcol = collen[0];
    for (int r = d; r < maxcol; ++r) {
        int len = 0;
        for (int j = 0; j < d; ++j)
            if (collen[j] > r) ++len;
        if (len > 0) parts.push_back(len);
    }
    return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
BigUInt dim(const Partition& lam) {
    const int n = lam.size();
    if (n > 60) throw SizeGuard("dim: |lambda| <= 60");
    if (n == 0) return BigUInt::one();
    // prime exponent vector of n! / prod(hooks)
    auto factor_into = [](int m, int sign, std::vector<int>& e) {
        for (int p = 2; p * p <= m; ++p)
            while (m % p == 0) {
                e[p] += sign;
                m /= p;
            }
        if (m > 1) e[m] += sign;
    };
    std::vector<int> expo(n + 1, 0);
    for (int k = 2; k <= n; ++k) factor_into(k, +1, expo);
    Partition conj = lam.conjugate();
    for (int i = 0; i < lam.rows(); ++i)
        for (int j = 0; j < lam.parts[i]; ++j) {
            int hook = (lam.parts[i] - j) + (conj.parts[j] - i) - 1;
            if (hook > 1) factor_into(hook, -1, expo);
        }
    BigUInt r = BigUInt::one();
    for (int p = 2; p <= n; ++p) {
        if (expo[p] < 0) throw Error("dim: hook arithmetic broke (internal)");
        for (int k = 0; k < expo[p]; ++k) r.mul_small(p);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama via beta-numbers: removing an r-rim-hook = moving one
// beta number down by r; sign = (-1)^(positions jumped).
// ---------------------------------------------------------------------------
static long long mn_rec(std::vector<int>& beta, const std::vector<int>& rho,
                        size_t level) {
    if (level == rho.size()) return 1;
    const int r = rho[level];
    long long total = 0;
    const int m = static_cast<int>(beta.size());
    for (int i = 0; i < m; ++i) {
        int b = beta[i] - r;
        if (b < 0) continue;
        bool occupied = false;
        int jumped = 0;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            if (beta[j] == b) { occupied = true; break; }
            if (beta[j] < beta[i] && beta[j] > b) ++jumped;
        }
        if (occupied) continue;
        int save = beta[i];
        beta[i] = b;
        long long sub = mn_rec(beta, rho, level + 1);
        beta[i] = save;
        total += (jumped % 2 ? -1 : 1) * sub;
    }
    return total;
}

long long mn_character(const Partition& lam, const CycleType& rho) {
    if (lam.size() != rho.size())
        throw SizeMismatch("mn_character: |lambda| != sum(rho)");
    if (lam.size() == 0) return 1;
    const int m = lam.rows();
    std::vector<int> beta(m);
    for (int i = 0; i < m; ++i) beta[i] = lam.parts[i] + (m - 1 - i);
    return mn_rec(beta, rho.rho, 0);
}

}  // namespace zdpp
