#include "splab/matset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "splab/util.hpp"

namespace splab {

std::vector<std::uint64_t> IndexSet::to_vector() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for_each([&](std::uint64_t i) { out.push_back(i); });
    return out;
}

std::uint64_t mat_universe(std::uint32_t n, std::uint64_t q) {
    if (n == 0 || n > 8) throw std::invalid_argument("matrix dimension out of range");
    if (q < 2) throw std::invalid_argument("field size out of range");
    std::uint64_t u = 1;
    for (std::uint32_t i = 0; i < n * n; ++i) {
        if (u > (1ull << 62) / q) throw std::invalid_argument("index space q^(n^2) too large");
        u *= q;
    }
    return u;
}

MatSet::MatSet(std::uint32_t n_, std::uint64_t q_) : n(n_), q(q_), elems(mat_universe(n_, q_)) {}

std::string MatSet::to_text() const {
    std::ostringstream out;
    out << n << ' ' << q << ' ' << size() << '\n';
    elems.for_each([&](std::uint64_t i) { out << i << '\n'; });
    return out.str();
}

MatSet MatSet::from_text(const std::string& text) {
    std::istringstream in(text);
    std::uint32_t n = 0;
    std::uint64_t q = 0, count = 0;
    if (!(in >> n >> q >> count)) throw std::invalid_argument("matset: malformed header");
    MatSet set(n, q);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        if (!(in >> v)) throw std::invalid_argument("matset: fewer indices than header count");
        if (v >= set.universe()) throw std::invalid_argument("matset: index out of range");
        if (i > 0 && v <= prev) throw std::invalid_argument("matset: indices not strictly ascending");
        set.elems.insert(v);
        prev = v;
    }
    std::uint64_t extra = 0;
    if (in >> extra) throw std::invalid_argument("matset: more indices than header count");
    return set;
}

void MatSet::save(const std::filesystem::path& path) const {
    write_file_atomic(path, to_text());
}

MatSet MatSet::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("matset: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

MatSet matset_from_indices(std::uint32_t n, std::uint64_t q, const std::vector<MatIndex>& idx) {
    MatSet set(n, q);
    for (MatIndex i : idx) {
        if (i >= set.universe()) throw std::invalid_argument("matset: index out of range");
        set.elems.insert(i);
    }
    return set;
}

MatSet matset_from_stratum(const MatRing& ring, Stratum s) {
    MatSet set(ring.n(), ring.q());
    ring.for_each(s, [&](MatIndex i) { set.elems.insert(i); });
    return set;
}

}  // namespace splab
