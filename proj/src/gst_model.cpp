#include "spintomo/gst/model.hpp"

#include "spintomo/gates.hpp"
#include "spintomo/pauli.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace spintomo::gst {

std::string GstCircuit::key() const {
    std::string k;
    k.reserve(gate_indices.size());
    for (int g : gate_indices) k.push_back(static_cast<char>('a' + g));
    return k;
}

int GateSetModel::gate_index(const std::string& name) const {
    for (size_t i = 0; i < gate_names.size(); ++i)
        if (gate_names[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("GateSetModel: unknown gate " + name);
}

void GateSetModel::validate() const {
    for (const auto& g : gates) {
        if (std::abs(g(0, 0) - 1.0) > 1e-10 || g.row(0).tail(15).lpNorm<Eigen::Infinity>() > 1e-10)
            throw std::runtime_error("GateSetModel: gate is not trace preserving");
    }
    RVec16 sum = RVec16::Zero();
    for (const auto& e : povm) sum += e;
    RVec16 ident = RVec16::Zero();
    ident(0) = 2.0;
    if ((sum - ident).lpNorm<Eigen::Infinity>() > 1e-9)
        throw std::runtime_error("GateSetModel: POVM does not sum to identity");
    if (std::abs(rho(0) - 0.5) > 1e-9)
        throw std::runtime_error("GateSetModel: rho is not trace one");
}

GateSetModel target_gateset() {
    GateSetModel m;
    m.gate_names = native_gate_set();
    for (const auto& name : m.gate_names)
        m.gates.push_back(ptm_of_unitary(nuclear_target_unitary(name)));
    Mat4 rho0 = Mat4::Zero();
    rho0(0, 0) = 1.0; // |up,up>
    m.rho = state_to_pauli_vec(rho0);
    for (int j = 0; j < 4; ++j) {
        Mat4 proj = Mat4::Zero();
        proj(j, j) = 1.0;
        m.povm[j] = effect_to_pauli_vec(proj);
    }
    return m;
}

std::array<double, 4> circuit_probabilities(const GateSetModel& model,
                                            const GstCircuit& circuit, double clip) {
    RVec16 state = model.rho;
    for (int g : circuit.gate_indices) state = model.gates[g] * state;
    std::array<double, 4> p{};
    for (int j = 0; j < 4; ++j)
        p[j] = std::clamp(model.povm[j].dot(state), clip, 1.0);
    return p;
}

Parameterization Parameterization::hs_default() {
    Parameterization p;
    p.kind = Kind::generator_sparse;
    p.gate_terms.resize(6);
    for (auto& terms : p.gate_terms)
        for (int k = 0; k < kNumHs; ++k) terms.push_back(elementary_label(k));
    return p;
}

Parameterization Parameterization::full_ptm(bool fit_spam) {
    Parameterization p;
    p.kind = Kind::full_ptm;
    p.fit_spam = fit_spam;
    return p;
}

int Parameterization::n_gate_params() const {
    if (kind == Kind::full_ptm) return 6 * 240;
    int n = 0;
    for (const auto& terms : gate_terms) n += static_cast<int>(terms.size());
    return n;
}

int Parameterization::n_params() const {
    return n_gate_params() + (fit_spam ? 15 + 3 * 16 : 0);
}

int Parameterization::gate_offset(int i) const {
    if (kind == Kind::full_ptm) return i * 240;
    int off = 0;
    for (int g = 0; g < i; ++g) off += static_cast<int>(gate_terms[g].size());
    return off;
}

namespace {

void apply_spam_params(const Parameterization& p, const Eigen::VectorXd& params,
                       GateSetModel& m) {
    if (!p.fit_spam) return;
    int off = p.spam_offset();
    for (int k = 0; k < 15; ++k) m.rho(k + 1) += params(off + k);
    off += 15;
    RVec16 total = RVec16::Zero();
    total(0) = 2.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 16; ++k) m.povm[j](k) += params(off + 16 * j + k);
        total -= m.povm[j];
    }
    m.povm[3] = total;
}

} // namespace

GateSetModel Parameterization::build(const Eigen::VectorXd& params) const {
    GateSetModel m = target_gateset();
    if (kind == Kind::full_ptm) {
        for (int i = 0; i < 6; ++i) {
            int off = gate_offset(i);
            for (int r = 1; r < 16; ++r)
                for (int c = 0; c < 16; ++c) m.gates[i](r, c) += params(off + 16 * (r - 1) + c);
        }
    } else {
        for (int i = 0; i < 6; ++i) {
            int off = gate_offset(i);
            RMat16 l = RMat16::Zero();
            for (size_t k = 0; k < gate_terms[i].size(); ++k)
                l += params(off + static_cast<int>(k)) *
                     elementary_ptm(elementary_index(gate_terms[i][k]));
            m.gates[i] = RMat16(Eigen::MatrixXd(l).exp() * m.gates[i]);
        }
    }
    apply_spam_params(*this, params, m);
    return m;
}

std::vector<std::pair<GenLabel, double>> Parameterization::gate_rates(
    const Eigen::VectorXd& params, int gate) const {
    if (kind != Kind::generator_sparse)
        throw std::logic_error("gate_rates requires the generator_sparse parameterization");
    std::vector<std::pair<GenLabel, double>> out;
    int off = gate_offset(gate);
    for (size_t k = 0; k < gate_terms[gate].size(); ++k)
        out.emplace_back(gate_terms[gate][k], params(off + static_cast<int>(k)));
    return out;
}

RMat16 expm_frechet(const RMat16& a, const RMat16& e) {
    Eigen::MatrixXd block(32, 32);
    block.setZero();
    block.topLeftCorner(16, 16) = a;
    block.bottomRightCorner(16, 16) = a;
    block.topRightCorner(16, 16) = e;
    Eigen::MatrixXd eb = block.exp();
    return RMat16(eb.topRightCorner(16, 16));
}

namespace {

// exp(A) * phi(-ad_A)(E) with phi(x) = (1 - e^{-x})/x, via the commutator
// series; accurate to machine precision for ||A|| < 0.5.
RMat16 frechet_series(const RMat16& a, const Eigen::MatrixXd& exp_a, const RMat16& e) {
    Eigen::MatrixXd term = e;
    Eigen::MatrixXd sum = e;
    double factor = 1.0;
    for (int k = 1; k <= 12; ++k) {
        term = a * term - term * a; // ad_A
        factor /= -(k + 1);         // (-1)^k / (k+1)!
        Eigen::MatrixXd contrib = factor * term;
        sum += contrib;
        if (contrib.lpNorm<Eigen::Infinity>() < 1e-16) break;
    }
    return RMat16(exp_a * sum);
}

} // namespace

PreparedModel prepare_model(const Parameterization& param, const Eigen::VectorXd& params) {
    PreparedModel pm;
    pm.param = &param;
    pm.model = param.build(params);
    if (param.kind == Parameterization::Kind::generator_sparse) {
        GateSetModel targets = target_gateset();
        pm.gate_derivs.resize(param.n_gate_params());
        for (int i = 0; i < 6; ++i) {
            int off = param.gate_offset(i);
            RMat16 a = RMat16::Zero();
            for (size_t k = 0; k < param.gate_terms[i].size(); ++k)
                a += params(off + static_cast<int>(k)) *
                     elementary_ptm(elementary_index(param.gate_terms[i][k]));
            Eigen::MatrixXd exp_a = Eigen::MatrixXd(a).exp();
            for (size_t k = 0; k < param.gate_terms[i].size(); ++k) {
                const RMat16& l = elementary_ptm(elementary_index(param.gate_terms[i][k]));
                RMat16 d = frechet_series(a, exp_a, l);
                pm.gate_derivs[off + static_cast<int>(k)] = RMat16(d * targets.gates[i]);
            }
        }
    }
    return pm;
}

} // namespace spintomo::gst
