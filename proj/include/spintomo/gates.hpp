#pragma once

#include "spintomo/linalg.hpp"
#include "spintomo/spin_model.hpp"

#include <map>
#include <string>
#include <vector>

namespace spintomo {

// Nuclear condition indices follow the basis convention m = 2*q1 + q2,
// up-arrow = 0: 0 = (up,up), 1 = (up,down), 2 = (down,up), 3 = (down,down).
enum NuclearCondition { kUpUp = 0, kUpDown = 1, kDownUp = 2, kDownDown = 3 };

// One native or derived gate. `name` selects the kind; the parameter fields
// used depend on the kind (see native_gate_unitary).
struct GateLabel {
    std::string name;
    int condition = kDownDown; // conditional electron gates; CZ default
    int target = 0;            // NROT target nucleus (1 or 2); Z_PHASE qubit (0 = electron)
    int cond_other = -1;       // NROT: require the other nucleus in this state (-1 = none)
    double theta = 0.0;        // rotation / phase angle (rad)
    double phase = 0.0;        // axis phase offset (rad)
    double duration_us = 0.0;  // IDLE

    static GateLabel named(const std::string& n) { GateLabel g; g.name = n; return g; }
    static GateLabel xpi_e(int cond, double phase = 0.0);
    static GateLabel x2pi_e(int cond);
    static GateLabel z_phase(int qubit, double theta);
    static GateLabel idle(double duration_us);
    static GateLabel nrot(int target, double theta, double phase, int cond_other = -1);

    bool operator==(const GateLabel& o) const;
};

struct Circuit {
    std::vector<GateLabel> gates;
    std::map<std::string, std::string> meta;

    size_t depth() const { return gates.size(); }
    Circuit& append(const GateLabel& g) { gates.push_back(g); return *this; }
    Circuit& append(const Circuit& other);
};

// The six GST gate names.
const std::vector<std::string>& native_gate_set();

// Ideal 8-dim unitary of a gate label. NMR rotations act on the addressed
// nucleus within the electron-down manifold; conditional electron rotations
// act on the (m1 m2) block; CZ is the electron 2pi rotation conditioned on
// its `condition` block (down-down by default, up-up for the alternative
// conditioning).
Mat8 native_gate_unitary(const GateLabel& label);

// Ideal nuclear 2-qubit unitary (electron-down restriction) for the six GST
// gates; throws for labels without a nuclear-only action.
Mat4 nuclear_target_unitary(const std::string& name);

// Building blocks, exposed for tests.
Mat8 nmr_rotation_unitary(int target, double theta, double phase, int cond_other = -1);
Mat8 esr_rotation_unitary(int condition, double theta, double phase);
Mat8 z_phase_unitary(int qubit, double theta);

enum class CnotKind { cnot, zcnot };

// CZ (or the up-down conditioned 2pi pulse) sandwiched between nuclear
// -pi/2 and +pi/2 pulses on Q2; control is Q1. The plain CNOT flips Q2 when
// Q1 is down; the zero-CNOT flips Q2 when Q1 is up.
Circuit compose_cnot(CnotKind kind);

// Fig. 2-style Bell circuit: -pi/2 y-rotation on Q1 followed by the zero-CNOT.
// Initial product states (up/down per nucleus) map onto the four Bell states.
Circuit bell_circuit();

// GHZ creation from |down,down,down>: superpose Q2, conditionally flip Q1,
// then flip the electron conditional on (up,up).
Circuit ghz_forward_circuit();

// Reversal with axis-phase shifts on the three reversal pulses. All-zero
// shifts make forward+reverse the identity.
Circuit ghz_reverse_circuit(double theta1, double theta2, double theta3);

// Apply a circuit's ideal unitaries to a pure 8-dim state.
Vec8 apply_circuit_state(const Vec8& psi, const Circuit& circuit);

// Ideal unitary of an entire circuit.
Mat8 circuit_unitary(const Circuit& circuit);

// Product basis kets.
Vec8 basis_ket8(int q1_down, int q2_down, int e_down);
Vec4 basis_ket4(int q1_down, int q2_down);

} // namespace spintomo
