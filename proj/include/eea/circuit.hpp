#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eea {

using Wire = uint32_t;

struct Control {
    Wire wire = 0;
    bool positive = true;

    bool operator==(const Control&) const = default;
};

inline Control pos(Wire w) { return {w, true}; }
inline Control neg(Wire w) { return {w, false}; }

enum class GateKind : uint8_t { NOT, SWAP };

// NOT flips t0; SWAP exchanges t0 and t1. Both fire iff every control
// matches its polarity.
struct Gate {
    GateKind kind = GateKind::NOT;
    Wire t0 = 0, t1 = 0;
    uint8_t nctrl = 0;
    std::array<Control, 3> ctrl{};

    static Gate x(Wire t) { return {GateKind::NOT, t, 0, 0, {}}; }
    static Gate cx(Control c, Wire t) { return {GateKind::NOT, t, 0, 1, {c}}; }
    static Gate ccx(Control a, Control b, Wire t) { return {GateKind::NOT, t, 0, 2, {a, b}}; }
    static Gate swap(Wire a, Wire b) { return {GateKind::SWAP, a, b, 0, {}}; }
    static Gate cswap(Control c, Wire a, Wire b) { return {GateKind::SWAP, a, b, 1, {c}}; }

    bool operator==(const Gate& o) const;
    // Distinct wires, all below `width`.
    bool well_formed(uint32_t width) const;
};

class CircuitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Consumer of a gate stream. Markers delimit labeled blocks
// ("begin <label>" / "end").
class GateSink {
   public:
    virtual ~GateSink() = default;
    virtual void gate(const Gate& g) = 0;
    virtual void marker(std::string_view /*text*/) {}
};

struct Circuit : GateSink {
    uint32_t width = 0;
    std::vector<Gate> gates;
    // Markers sit before gates[index].
    std::vector<std::pair<size_t, std::string>> markers;
    std::map<std::string, std::vector<Wire>> layout;

    Circuit() = default;
    explicit Circuit(uint32_t w) : width(w) {}

    void gate(const Gate& g) override { gates.push_back(g); }
    void marker(std::string_view text) override { markers.emplace_back(gates.size(), std::string(text)); }

    // Replays gates and markers into another sink.
    void emit(GateSink& out) const;

    bool operator==(const Circuit& o) const {
        return width == o.width && gates == o.gates && markers == o.markers;
    }
};

// Throws CircuitError naming the first malformed gate.
void validate(const Circuit& c);

// Classical semantics on one basis state.
std::vector<uint8_t> apply(const Circuit& c, std::vector<uint8_t> bits);

// Reversed gate order; markers are dropped.
Circuit invert(const Circuit& c);

// Rewrites into X, CNOT and CCX with positive controls.
Circuit lower(const Circuit& c);
void lower_gate(const Gate& g, GateSink& out);

struct GateCounts {
    uint64_t toffoli = 0, cnot = 0, x = 0;

    GateCounts& operator+=(const GateCounts& o) {
        toffoli += o.toffoli;
        cnot += o.cnot;
        x += o.x;
        return *this;
    }
    bool operator==(const GateCounts&) const = default;
};

struct ResourceReport {
    GateCounts total;
    bool swap_lowered = false;
    uint32_t width = 0;
    std::map<std::string, GateCounts> per_block;
};

// Counts lowered-basis gates as they stream past. Unlowered gates are
// counted as their lowering. Gates outside any block go to "other".
class GateCounter : public GateSink {
   public:
    void gate(const Gate& g) override;
    void marker(std::string_view text) override;
    ResourceReport report(uint32_t width = 0) const;

   private:
    GateCounts total_;
    bool swaps_ = false;
    std::vector<std::string> stack_;
    std::map<std::string, GateCounts> blocks_;
};

GateCounts lowered_counts(const Gate& g);

// Throws CircuitError when a gate is not X/CNOT/CCX with positive controls.
ResourceReport count(const Circuit& c);

// Bit-parallel simulator: bit j of lanes[w] is wire w of basis state j.
class Simulator : public GateSink {
   public:
    explicit Simulator(uint32_t width) : lanes(width, 0) {}
    void gate(const Gate& g) override;
    void run(const Circuit& c) {
        for (const Gate& g : c.gates) gate(g);
    }

    void set(Wire w, int lane, bool v);
    bool get(Wire w, int lane) const { return (lanes[w] >> lane) & 1; }

    std::vector<uint64_t> lanes;
};

std::string serialize(const Circuit& c);
Circuit parse(std::string_view text);
std::string serialize_json(const Circuit& c);
Circuit parse_json(std::string_view text);

// Streams the text format to an output string buffer without storing gates.
class TextWriter : public GateSink {
   public:
    explicit TextWriter(std::string& out, uint32_t width);
    void gate(const Gate& g) override;
    void marker(std::string_view text) override;

   private:
    std::string& out_;
};

std::string gate_text(const Gate& g);

}  // namespace eea
