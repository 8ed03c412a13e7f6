#include "spintomo/gates.hpp"

#include "spintomo/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace spintomo {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat2 rotation2(double theta, double phase) {
    double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    Mat2 r;
    r << c, cx(0, -1) * std::exp(cx(0, -phase)) * s,
         cx(0, -1) * std::exp(cx(0, phase)) * s, c;
    return r;
}

} // namespace

GateLabel GateLabel::xpi_e(int cond, double phase) {
    GateLabel g;
    g.name = "Xpi_e";
    g.condition = cond;
    g.phase = phase;
    return g;
}

GateLabel GateLabel::x2pi_e(int cond) {
    GateLabel g;
    g.name = "X2pi_e";
    g.condition = cond;
    return g;
}

GateLabel GateLabel::z_phase(int qubit, double theta) {
    GateLabel g;
    g.name = "Z_phase";
    g.target = qubit;
    g.theta = theta;
    return g;
}

GateLabel GateLabel::idle(double duration_us) {
    GateLabel g;
    g.name = "Idle";
    g.duration_us = duration_us;
    return g;
}

GateLabel GateLabel::nrot(int target, double theta, double phase, int cond_other) {
    GateLabel g;
    g.name = "NRot";
    g.target = target;
    g.theta = theta;
    g.phase = phase;
    g.cond_other = cond_other;
    return g;
}

bool GateLabel::operator==(const GateLabel& o) const {
    return name == o.name && condition == o.condition && target == o.target &&
           cond_other == o.cond_other && theta == o.theta && phase == o.phase &&
           duration_us == o.duration_us;
}

Circuit& Circuit::append(const Circuit& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}

const std::vector<std::string>& native_gate_set() {
    static const std::vector<std::string> names = {"X90_Q1", "Y90_Q1", "X90_Q2",
                                                   "Y90_Q2", "Ym90_Q2", "CZ"};
    return names;
}

Mat8 nmr_rotation_unitary(int target, double theta, double phase, int cond_other) {
    Mat8 u = Mat8::Identity();
    Mat2 r = rotation2(theta, phase);
    // Electron-down manifold only (e index 1 = down).
    for (int other = 0; other < 2; ++other) {
        if (cond_other >= 0 && other != cond_other) continue;
        for (int self = 0; self < 2; ++self)
            for (int self2 = 0; self2 < 2; ++self2) {
                // Row/col indices for target-nucleus values self (row) self2 (col).
                int q1r = (target == 1) ? self : other;
                int q2r = (target == 1) ? other : self;
                int q1c = (target == 1) ? self2 : other;
                int q2c = (target == 1) ? other : self2;
                u(4 * q1r + 2 * q2r + 1, 4 * q1c + 2 * q2c + 1) = r(self, self2);
            }
    }
    return u;
}

Mat8 esr_rotation_unitary(int condition, double theta, double phase) {
    Mat8 u = Mat8::Identity();
    Mat2 r = rotation2(theta, phase);
    int base = 2 * condition; // electron index 0 (up) and 1 (down) of this block
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            u(base + a, base + b) = r(a, b);
    return u;
}

Mat8 z_phase_unitary(int qubit, double theta) {
    Mat8 u = Mat8::Identity();
    for (int b = 0; b < 8; ++b) {
        int bit = (qubit == 0) ? (b & 1) : (qubit == 1 ? (b >> 2) & 1 : (b >> 1) & 1);
        // exp(+i theta Z / 2) with Z = diag(1, -1) over (up, down).
        u(b, b) = std::exp(cx(0, (bit ? -0.5 : 0.5) * theta));
    }
    return u;
}

Mat8 native_gate_unitary(const GateLabel& label) {
    const std::string& n = label.name;
    if (n == "X90_Q1") return nmr_rotation_unitary(1, kPi / 2, 0.0 + label.phase);
    if (n == "Y90_Q1") return nmr_rotation_unitary(1, kPi / 2, kPi / 2 + label.phase);
    if (n == "X90_Q2") return nmr_rotation_unitary(2, kPi / 2, 0.0 + label.phase);
    if (n == "Y90_Q2") return nmr_rotation_unitary(2, kPi / 2, kPi / 2 + label.phase);
    if (n == "Ym90_Q2") return nmr_rotation_unitary(2, -kPi / 2, kPi / 2 + label.phase);
    if (n == "CZ") return esr_rotation_unitary(label.condition, 2 * kPi, label.phase);
    if (n == "Xpi_e") return esr_rotation_unitary(label.condition, kPi, label.phase);
    if (n == "X2pi_e") return esr_rotation_unitary(label.condition, 2 * kPi, label.phase);
    if (n == "Z_phase") return z_phase_unitary(label.target, label.theta);
    if (n == "Idle") return Mat8::Identity();
    if (n == "NRot")
        return nmr_rotation_unitary(label.target, label.theta, label.phase, label.cond_other);
    if (n == "ERot") return esr_rotation_unitary(label.condition, label.theta, label.phase);
    throw std::invalid_argument("native_gate_unitary: unknown gate label '" + n + "'");
}

Mat4 nuclear_target_unitary(const std::string& name) {
    auto rot1 = [](int target, double theta, double phase) {
        Mat2 r = rotation2(theta, phase);
        if (target == 1) return Mat4(kron(r, Mat2::Identity()));
        return Mat4(kron(Mat2::Identity(), r));
    };
    if (name == "X90_Q1") return rot1(1, kPi / 2, 0);
    if (name == "Y90_Q1") return rot1(1, kPi / 2, kPi / 2);
    if (name == "X90_Q2") return rot1(2, kPi / 2, 0);
    if (name == "Y90_Q2") return rot1(2, kPi / 2, kPi / 2);
    if (name == "Ym90_Q2") return rot1(2, -kPi / 2, kPi / 2);
    if (name == "CZ") {
        Mat4 u = Mat4::Identity();
        u(3, 3) = -1.0; // -1 on |down,down>
        return u;
    }
    throw std::invalid_argument("nuclear_target_unitary: '" + name + "' is not a GST gate");
}

Circuit compose_cnot(CnotKind kind) {
    Circuit c;
    c.append(GateLabel::named("Ym90_Q2"));
    if (kind == CnotKind::cnot)
        c.append(GateLabel::named("CZ"));
    else
        c.append(GateLabel::x2pi_e(kUpDown));
    c.append(GateLabel::named("Y90_Q2"));
    return c;
}

Circuit bell_circuit() {
    Circuit c;
    c.append(GateLabel::nrot(1, -kPi / 2, kPi / 2)); // -pi/2 y on Q1
    c.append(compose_cnot(CnotKind::zcnot));
    return c;
}

Circuit ghz_forward_circuit() {
    Circuit c;
    c.append(GateLabel::nrot(2, kPi / 2, kPi / 2));            // Y90 on Q2
    c.append(GateLabel::nrot(1, kPi, kPi / 2, /*cond q2=*/0)); // flip Q1 when Q2 up
    c.append(GateLabel::xpi_e(kUpUp));                         // electron flip on (up,up)
    return c;
}

Circuit ghz_reverse_circuit(double theta1, double theta2, double theta3) {
    Circuit c;
    GateLabel undo_e;
    undo_e.name = "ERot";
    undo_e.condition = kUpUp;
    undo_e.theta = -kPi;
    undo_e.phase = theta1;
    c.append(undo_e);
    c.append(GateLabel::nrot(1, -kPi, kPi / 2 + theta2, 0));
    c.append(GateLabel::nrot(2, -kPi / 2, kPi / 2 + theta3));
    return c;
}

Vec8 apply_circuit_state(const Vec8& psi, const Circuit& circuit) {
    Vec8 v = psi;
    for (const auto& g : circuit.gates)
        v = native_gate_unitary(g) * v;
    return v;
}

Mat8 circuit_unitary(const Circuit& circuit) {
    Mat8 u = Mat8::Identity();
    for (const auto& g : circuit.gates)
        u = native_gate_unitary(g) * u;
    return u;
}

Vec8 basis_ket8(int q1_down, int q2_down, int e_down) {
    Vec8 v = Vec8::Zero();
    v(4 * q1_down + 2 * q2_down + e_down) = 1.0;
    return v;
}

Vec4 basis_ket4(int q1_down, int q2_down) {
    Vec4 v = Vec4::Zero();
    v(2 * q1_down + q2_down) = 1.0;
    return v;
}

} // namespace spintomo
