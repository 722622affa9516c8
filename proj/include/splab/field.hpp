#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splab {

bool is_prime(std::uint64_t v);

// Factor q = p^k with p prime, k >= 1. Throws std::invalid_argument otherwise.
struct PrimePower {
    std::uint32_t p;
    std::uint32_t k;
};
PrimePower factor_prime_power(std::uint64_t q);

struct FieldOptions {
    bool allow_even = false;         // the constructions assume odd q; p=2 only on request
    std::uint64_t max_q = 1u << 16;  // size cap for the dense index representation
    std::uint64_t table_q_max = 2048;  // build q*q add/mul tables up to this size
};

// Polynomials over F_p are coefficient lists c[0] + c[1] t + ... (c[i] < p).
// Irreducibility is decided by exhaustive trial division over all monic
// divisors of degree <= deg/2. Throws on a non-monic input.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

// F_q, q = p^k. Elements are dense indices in [0, q): index sum c_i p^i
// encodes the residue c_0 + c_1 t + ... + c_{k-1} t^{k-1}.
// Immutable after construction and safe to share across threads.
class Field {
  public:
    Field(std::uint32_t p, std::uint32_t k, FieldOptions opts = {});

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }
    // Monic modulus, degree k, coefficients c[0..k]; for k=1 this is just t.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        check(a), check(b);
        return add_tab_.empty() ? add_raw(a, b) : add_tab_[static_cast<std::size_t>(a) * q_ + b];
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        check(a), check(b);
        return mul_tab_.empty() ? mul_raw(a, b) : mul_tab_[static_cast<std::size_t>(a) * q_ + b];
    }
    std::uint32_t neg(std::uint32_t a) const {
        check(a);
        return neg_tab_.empty() ? neg_raw(a) : neg_tab_[a];
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    // Multiplicative inverse; throws std::domain_error on 0.
    std::uint32_t inv(std::uint32_t a) const;
    // a^e; negative e inverts first (throws on a=0 with e<=0 where undefined).
    std::uint32_t pow(std::uint32_t a, std::int64_t e) const;

    bool same_spec(const Field& other) const {
        return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
    }

    std::vector<std::uint32_t> to_coeffs(std::uint32_t a) const;
    std::uint32_t from_coeffs(const std::vector<std::uint32_t>& c) const;

    std::string describe() const;  // e.g. "F_9 = F_3[t]/(t^2 + 1)"

  private:
    void check(std::uint32_t a) const;
    std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_raw(std::uint32_t a) const;
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> add_tab_;  // q*q, optional
    std::vector<std::uint32_t> mul_tab_;  // q*q, optional
    std::vector<std::uint32_t> neg_tab_;
    std::vector<std::uint32_t> inv_tab_;  // inv_tab_[0] unused
};

// Field spec factory: picks the least monic irreducible of degree k over F_p,
// ordering candidates by their index encoding (constant-term least significant).
Field build_field(std::uint32_t p, std::uint32_t k, FieldOptions opts = {});

// Checked element: an index paired with its field, for call sites where
// mixing fields must be a hard error. Hot paths use Field methods directly.
struct Felt {
    std::uint32_t index = 0;
    const Field* field = nullptr;

    friend Felt operator+(Felt a, Felt b) { return {a.same(b).add(a.index, b.index), a.field}; }
    friend Felt operator-(Felt a, Felt b) { return {a.same(b).sub(a.index, b.index), a.field}; }
    friend Felt operator*(Felt a, Felt b) { return {a.same(b).mul(a.index, b.index), a.field}; }
    friend Felt operator-(Felt a) { return {a.field->neg(a.index), a.field}; }
    friend bool operator==(Felt a, Felt b) {
        (void)a.same(b);
        return a.index == b.index;
    }
    Felt inverse() const { return {field->inv(index), field}; }

    const Field& same(Felt b) const;
};

}  // namespace splab
