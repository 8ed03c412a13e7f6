#include "spintomo/gst/elementary.hpp"

#include "spintomo/pauli.hpp"

#include <array>
#include <functional>

namespace spintomo::gst {

namespace {

// Pair index for p < q among 1..15: 0..104.
int pair_index(int p, int q) {
    int idx = 0;
    for (int a = 1; a < p; ++a) idx += 15 - a;
    return idx + (q - p - 1);
}

std::pair<int, int> pair_from_index(int idx) {
    for (int p = 1; p < 15; ++p) {
        int block = 15 - p;
        if (idx < block) return {p, p + 1 + idx};
        idx -= block;
    }
    throw std::logic_error("pair_from_index: out of range");
}

RMat16 ptm_of_action(const std::function<Mat4(const Mat4&)>& action) {
    RMat16 r;
    for (int j = 0; j < 16; ++j) {
        Mat4 mapped = action(Mat4(0.5 * pauli2(j)));
        for (int i = 0; i < 16; ++i)
            r(i, j) = 0.5 * std::real((pauli2(i) * mapped).trace());
    }
    return r;
}

RMat16 build_elementary(int index) {
    GenLabel l = elementary_label(index);
    const Mat4& p = pauli2(l.p);
    switch (l.kind) {
        case GenKind::H:
            return ptm_of_action([&](const Mat4& rho) {
                return Mat4(cx(0, -1) * (p * rho - rho * p));
            });
        case GenKind::S:
            return ptm_of_action([&](const Mat4& rho) { return Mat4(p * rho * p - rho); });
        case GenKind::C: {
            const Mat4& q = pauli2(l.q);
            Mat4 anti = p * q + q * p;
            return ptm_of_action([&](const Mat4& rho) {
                return Mat4(p * rho * q + q * rho * p - 0.5 * (anti * rho + rho * anti));
            });
        }
        case GenKind::A: {
            const Mat4& q = pauli2(l.q);
            Mat4 comm = p * q - q * p;
            return ptm_of_action([&](const Mat4& rho) {
                return Mat4(cx(0, 1) * (p * rho * q - q * rho * p) +
                            cx(0, 0.5) * (comm * rho + rho * comm));
            });
        }
    }
    throw std::logic_error("build_elementary: bad kind");
}

struct ElementaryCache {
    std::array<RMat16, kNumElementary> ptms;
    Eigen::MatrixXd basis;                    // 256 x 240, vectorized PTMs
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;

    ElementaryCache() : basis(256, kNumElementary) {
        for (int k = 0; k < kNumElementary; ++k) {
            ptms[k] = build_elementary(k);
            basis.col(k) = Eigen::Map<const Eigen::VectorXd>(ptms[k].data(), 256);
        }
        qr.compute(basis);
    }
};

const ElementaryCache& cache() {
    static ElementaryCache c;
    return c;
}

} // namespace

int elementary_index(const GenLabel& l) {
    switch (l.kind) {
        case GenKind::H: return l.p - 1;
        case GenKind::S: return 15 + l.p - 1;
        case GenKind::C: return 30 + pair_index(l.p, l.q);
        case GenKind::A: return 135 + pair_index(l.p, l.q);
    }
    throw std::logic_error("elementary_index: bad kind");
}

GenLabel elementary_label(int index) {
    GenLabel l;
    if (index < 15) {
        l.kind = GenKind::H;
        l.p = index + 1;
    } else if (index < 30) {
        l.kind = GenKind::S;
        l.p = index - 15 + 1;
    } else if (index < 135) {
        l.kind = GenKind::C;
        auto [p, q] = pair_from_index(index - 30);
        l.p = p;
        l.q = q;
    } else if (index < 240) {
        l.kind = GenKind::A;
        auto [p, q] = pair_from_index(index - 135);
        l.p = p;
        l.q = q;
    } else {
        throw std::out_of_range("elementary_label: index out of range");
    }
    return l;
}

std::string to_string(const GenLabel& l) {
    const char* kind = l.kind == GenKind::H   ? "H"
                       : l.kind == GenKind::S ? "S"
                       : l.kind == GenKind::C ? "C"
                                              : "A";
    std::string out = std::string(kind) + "_" + pauli2_label(l.p);
    if (l.kind == GenKind::C || l.kind == GenKind::A) out += "," + pauli2_label(l.q);
    return out;
}

GenLabel parse_gen_label(const std::string& text) {
    if (text.size() < 4 || text[1] != '_')
        throw std::invalid_argument("bad generator label: " + text);
    GenLabel l;
    switch (text[0]) {
        case 'H': l.kind = GenKind::H; break;
        case 'S': l.kind = GenKind::S; break;
        case 'C': l.kind = GenKind::C; break;
        case 'A': l.kind = GenKind::A; break;
        default: throw std::invalid_argument("bad generator kind: " + text);
    }
    auto comma = text.find(',');
    l.p = pauli2_index(text.substr(2, comma == std::string::npos ? std::string::npos : comma - 2));
    if (comma != std::string::npos) l.q = pauli2_index(text.substr(comma + 1));
    if ((l.kind == GenKind::C || l.kind == GenKind::A)) {
        if (l.q < 0) throw std::invalid_argument("C/A labels need two Paulis: " + text);
        if (l.p > l.q) std::swap(l.p, l.q);
        if (l.p == l.q) throw std::invalid_argument("C/A labels need distinct Paulis");
    }
    if (l.p == 0 || l.q == 0)
        throw std::invalid_argument("identity Pauli not allowed in generator label");
    return l;
}

const RMat16& elementary_ptm(int index) { return cache().ptms[index]; }

RMat16 generator_from_rates(const std::vector<std::pair<GenLabel, double>>& rates) {
    RMat16 g = RMat16::Zero();
    for (const auto& [label, rate] : rates) g += rate * elementary_ptm(elementary_index(label));
    return g;
}

std::vector<std::pair<GenLabel, double>> GeneratorDecomposition::nonzero(double floor) const {
    std::vector<std::pair<GenLabel, double>> out;
    for (int k = 0; k < kNumElementary; ++k)
        if (std::abs(rates(k)) > floor) out.emplace_back(elementary_label(k), rates(k));
    return out;
}

GeneratorDecomposition decompose_error_generator(const RMat16& generator) {
    Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(generator.data(), 256);
    GeneratorDecomposition d;
    d.rates = cache().qr.solve(target);
    Eigen::VectorXd reconstructed = cache().basis * d.rates;
    d.residual = (reconstructed - target).norm();
    return d;
}

RMat16 error_generator(const RMat16& gate, const RMat16& target) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu{Eigen::MatrixXd(target)};
    if (!lu.isInvertible())
        throw std::invalid_argument("error_generator: target is not invertible");
    Eigen::MatrixXd ratio = gate * lu.inverse();
    RMatX l;
    try {
        l = logm_real(ratio);
    } catch (const std::domain_error&) {
        throw std::domain_error(
            "error_generator: branch ambiguity in the matrix logarithm; the gate is too "
            "far from its target (consider regularizing or reducing errors)");
    }
    RMatX check = expm_real(l) * Eigen::MatrixXd(target);
    if ((check - Eigen::MatrixXd(gate)).lpNorm<Eigen::Infinity>() > 1e-9)
        throw std::runtime_error("error_generator: exp(log) round trip failed");
    return RMat16(l);
}

} // namespace spintomo::gst
