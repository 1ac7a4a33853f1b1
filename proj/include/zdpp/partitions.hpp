#ifndef ZDPP_PARTITIONS_HPP
#define ZDPP_PARTITIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zdpp/types.hpp"

namespace zdpp {

// ---------------------------------------------------------------------------
// Young diagrams.
// ---------------------------------------------------------------------------
struct Partition {
    std::vector<int> parts;  // weakly decreasing, all > 0

    Partition() = default;
    explicit Partition(std::vector<int> p);

    int  size() const;             // |lambda|
    int  rows() const { return static_cast<int>(parts.size()); }
    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

    Partition conjugate() const;
    std::string str() const;
};

/// Frobenius coordinates (p_1>...>p_d >= 0 | q_1>...>q_d >= 0).
struct FrobeniusCoords {
    std::vector<int> p;
    std::vector<int> q;

    int d() const { return static_cast<int>(p.size()); }
    int size() const;  // sum (p_i + q_i + 1)
    bool operator==(const FrobeniusCoords&) const = default;
};

/// Cycle type: order-significant composition, sum = n.
struct CycleType {
    std::vector<int> rho;
    int size() const;
};

// ---------------------------------------------------------------------------
// Minimal unsigned big integer for exact tableau counts (dim can exceed
// 128 bits for |lambda| near 60).
// ---------------------------------------------------------------------------
struct BigUInt {
    std::vector<std::uint32_t> limbs{0};  // base 1e9, little endian

    static BigUInt one();
    void mul_small(std::uint64_t f);
    void add(const BigUInt& other);
    std::string str() const;
    bool fits_u64() const;
    std::uint64_t to_u64() const;
    bool operator==(const BigUInt&) const = default;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------
std::vector<Partition> enumerate_partitions(int n);  // n <= 60
std::uint64_t partition_count(int n);                // p(n), n <= 60

FrobeniusCoords frobenius(const Partition& lam);
Partition from_frobenius(const FrobeniusCoords& fc);

/// Number of standard Young tableaux (hook length formula, exact).
BigUInt dim(const Partition& lam);  // |lambda| <= 60

/// Irreducible character chi^lambda_rho by rim-hook removal.
long long mn_character(const Partition& lam, const CycleType& rho);

}  // namespace zdpp

#endif
