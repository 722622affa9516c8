#include "splab/field.hpp"

#include <sstream>
#include <stdexcept>

namespace splab {

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

PrimePower factor_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("field size must be at least 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t k = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1)
        throw std::invalid_argument("field size " + std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), k};
}

namespace {

// Remainder of a mod b over F_p; b monic.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                    std::uint32_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint32_t lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<std::uint32_t> poly_from_index(std::uint64_t idx, std::uint32_t p, std::uint32_t len) {
    std::vector<std::uint32_t> c(len);
    for (std::uint32_t i = 0; i < len; ++i) {
        c[i] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    return c;
}

}  // namespace

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("coefficient modulus must be prime");
    if (poly.size() < 2) throw std::invalid_argument("polynomial degree must be at least 1");
    if (poly.back() != 1) throw std::invalid_argument("polynomial must be monic");
    for (std::uint32_t c : poly)
        if (c >= p) throw std::invalid_argument("coefficient out of range");
    const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t combos = 1;
        for (std::uint32_t i = 0; i < d; ++i) combos *= p;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::vector<std::uint32_t> divisor = poly_from_index(idx, p, d);
            divisor.push_back(1);
            if (poly_rem(poly, divisor, p).empty()) return false;
        }
    }
    return true;
}

Field::Field(std::uint32_t p, std::uint32_t k, FieldOptions opts) : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (p == 2 && !opts.allow_even)
        throw std::invalid_argument("even characteristic rejected (pass allow_even to override)");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > opts.max_q)
            throw std::invalid_argument("field size p^k exceeds the configured cap of " +
                                        std::to_string(opts.max_q));
    }
    q_ = q;

    // Least monic irreducible of degree k, scanning constant-term-first
    // index order. For k=1 this lands on t itself.
    bool found = false;
    for (std::uint64_t idx = 0; idx < q_; ++idx) {
        std::vector<std::uint32_t> cand = poly_from_index(idx, p_, k_);
        cand.push_back(1);
        if (is_irreducible(cand, p_)) {
            modulus_ = std::move(cand);
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("internal error: no irreducible modulus of degree k");

    neg_tab_.resize(q_);
    for (std::uint64_t a = 0; a < q_; ++a) neg_tab_[a] = neg_raw(static_cast<std::uint32_t>(a));
    if (q_ <= opts.table_q_max) {
        add_tab_.resize(q_ * q_);
        mul_tab_.resize(q_ * q_);
        for (std::uint64_t a = 0; a < q_; ++a) {
            for (std::uint64_t b = 0; b < q_; ++b) {
                add_tab_[a * q_ + b] = add_raw(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
                mul_tab_[a * q_ + b] = mul_raw(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
            }
        }
    }
    inv_tab_.assign(q_, 0);
    for (std::uint64_t a = 1; a < q_; ++a)
        inv_tab_[a] = pow(static_cast<std::uint32_t>(a), static_cast<std::int64_t>(q_) - 2);
}

void Field::check(std::uint32_t a) const {
    if (a >= q_) throw std::out_of_range("element index " + std::to_string(a) + " not in F_" + std::to_string(q_));
}

std::uint32_t Field::add_raw(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a + b) % p_;
    // Addition is carry-free: digitwise mod p.
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

std::uint32_t Field::neg_raw(std::uint32_t a) const {
    if (k_ == 1) return (p_ - a) % p_;
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        out += ((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

std::uint32_t Field::mul_raw(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    std::vector<std::uint32_t> ca = to_coeffs(a), cb = to_coeffs(b);
    std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (ca[i] == 0) continue;
        for (std::uint32_t j = 0; j < k_; ++j)
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
    }
    std::vector<std::uint32_t> rem = poly_rem(std::move(prod), modulus_, p_);
    rem.resize(k_, 0);
    return from_coeffs(rem);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    check(a);
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(q_));
    return inv_tab_[a];
}

std::uint32_t Field::pow(std::uint32_t a, std::int64_t e) const {
    check(a);
    if (e < 0) {
        a = inv(a);  // throws on a=0
        e = -e;
    }
    std::uint32_t base = a, out = 1;
    std::uint64_t exp = static_cast<std::uint64_t>(e);
    while (exp > 0) {
        if (exp & 1) out = mul_tab_.empty() ? mul_raw(out, base) : mul_tab_[static_cast<std::size_t>(out) * q_ + base];
        base = mul_tab_.empty() ? mul_raw(base, base) : mul_tab_[static_cast<std::size_t>(base) * q_ + base];
        exp >>= 1;
    }
    return out;
}

std::vector<std::uint32_t> Field::to_coeffs(std::uint32_t a) const {
    check(a);
    return poly_from_index(a, p_, k_);
}

std::uint32_t Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != k_) throw std::invalid_argument("coefficient list must have length k");
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
        out += c[i] * scale;
        scale *= p_;
    }
    return out;
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (k_ > 1) {
        os << " = F_" << p_ << "[t]/(";
        bool first = true;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            std::uint32_t c = modulus_[i];
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i >= 1) {
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

Field build_field(std::uint32_t p, std::uint32_t k, FieldOptions opts) { return Field(p, k, opts); }

const Field& Felt::same(Felt b) const {
    if (field == nullptr || b.field == nullptr)
        throw std::invalid_argument("field element without a field");
    if (!field->same_spec(*b.field))
        throw std::invalid_argument("operands belong to different fields");
    return *field;
}

}  // namespace splab
