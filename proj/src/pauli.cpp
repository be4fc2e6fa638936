#include "stabevo/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace stabevo {

PauliOp PauliOp::from_string(std::string_view s) {
    PauliOp p(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        switch (s[i]) {
            case 'I':
                break;
            case 'X':
                p.x.set(i, true);
                break;
            case 'Y':
                p.x.set(i, true);
                p.z.set(i, true);
                break;
            case 'Z':
                p.z.set(i, true);
                break;
            default:
                throw std::invalid_argument("Pauli string may only contain I, X, Y, Z");
        }
    }
    return p;
}

PauliOp PauliOp::from_vec(const F2Vec& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("symplectic vector has odd length");
    PauliOp p(v.size() / 2);
    p.x = v.slice(0, p.n);
    p.z = v.slice(p.n, 2 * p.n);
    return p;
}

F2Vec PauliOp::to_vec() const {
    F2Vec v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x.get(i)) v.set(i, true);
        if (z.get(i)) v.set(n + i, true);
    }
    return v;
}

std::string PauliOp::to_string() const {
    std::string s(n, 'I');
    for (std::size_t i = 0; i < n; ++i) {
        const bool xi = x.get(i);
        const bool zi = z.get(i);
        if (xi && zi)
            s[i] = 'Y';
        else if (xi)
            s[i] = 'X';
        else if (zi)
            s[i] = 'Z';
    }
    return s;
}

std::size_t PauliOp::weight() const {
    std::size_t total = 0;
    auto xw = x.words();
    auto zw = z.words();
    for (std::size_t w = 0; w < xw.size(); ++w) total += std::popcount(xw[w] | zw[w]);
    return total;
}

std::size_t weight(const PauliOp& p) { return p.weight(); }

int symplectic_product(const PauliOp& a, const PauliOp& b) {
    if (a.n != b.n) throw std::invalid_argument("operators act on different qubit counts");
    auto ax = a.x.words();
    auto az = a.z.words();
    auto bx = b.x.words();
    auto bz = b.z.words();
    std::size_t acc = 0;
    for (std::size_t w = 0; w < ax.size(); ++w) {
        acc += std::popcount(az[w] & bx[w]) + std::popcount(ax[w] & bz[w]);
    }
    return static_cast<int>(acc & 1);
}

PauliCounts pauli_counts(std::span<const std::uint64_t> x, std::span<const std::uint64_t> z,
                         std::size_t n) {
    PauliCounts c;
    for (std::size_t w = 0; w < x.size(); ++w) {
        const std::uint64_t xw = x[w];
        const std::uint64_t zw = z[w];
        c.n_y += std::popcount(xw & zw);
        c.n_x += std::popcount(xw & ~zw);
        c.n_z += std::popcount(zw & ~xw);
    }
    c.n_i = n - c.n_x - c.n_y - c.n_z;
    return c;
}

ErrorModel::ErrorModel(double p_i, double p_x, double p_y, double p_z) {
    p_ = {p_i, p_x, p_y, p_z};
    double sum = 0.0;
    for (double p : p_) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("error probabilities must lie in [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("error probabilities must sum to 1");
    for (std::size_t i = 0; i < 4; ++i) logp_[i] = p_[i] > 0.0 ? std::log(p_[i]) : 0.0;
}

ErrorModel ErrorModel::depolarising(double p) {
    if (p < 0.0 || p > 1.0 / 3.0)
        throw std::invalid_argument("depolarising parameter must lie in [0, 1/3]");
    return ErrorModel(1.0 - 3.0 * p, p, p, p);
}

ErrorModel ErrorModel::pauli(double p_x, double p_y, double p_z) {
    return ErrorModel(1.0 - p_x - p_y - p_z, p_x, p_y, p_z);
}

ErrorModel ErrorModel::parse(std::string_view literal) {
    const auto colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("error model literal must be depolarising:<p> or pauli:<px>,<py>,<pz>");
    const std::string_view kind = literal.substr(0, colon);
    const std::string rest(literal.substr(colon + 1));
    auto to_double = [](const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid probability in error model literal");
        }
        if (pos != s.size()) throw std::invalid_argument("invalid probability in error model literal");
        return v;
    };
    if (kind == "depolarising" || kind == "depolarizing") {
        return depolarising(to_double(rest));
    }
    if (kind == "pauli") {
        std::stringstream ss(rest);
        std::string part;
        std::vector<double> ps;
        while (std::getline(ss, part, ',')) ps.push_back(to_double(part));
        if (ps.size() != 3)
            throw std::invalid_argument("pauli model literal needs three probabilities");
        return pauli(ps[0], ps[1], ps[2]);
    }
    throw std::invalid_argument("unknown error model kind '" + std::string(kind) + "'");
}

double ErrorModel::op_probability(const PauliOp& p) const {
    return probability_from_counts(pauli_counts(p.x.words(), p.z.words(), p.n));
}

double ErrorModel::probability_from_counts(const PauliCounts& c) const {
    const std::size_t counts[4] = {c.n_i, c.n_x, c.n_y, c.n_z};
    double log_prob = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (counts[i] == 0) continue;
        if (p_[i] == 0.0) return 0.0;
        log_prob += double(counts[i]) * logp_[i];
    }
    return std::exp(log_prob);
}

std::string ErrorModel::to_string() const {
    std::ostringstream out;
    out.precision(17);
    if (is_depolarising()) {
        out << "depolarising:" << p_x();
    } else {
        out << "pauli:" << p_x() << "," << p_y() << "," << p_z();
    }
    return out.str();
}

}  // namespace stabevo
