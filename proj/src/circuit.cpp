#include "eea/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"

namespace eea {

bool Gate::operator==(const Gate& o) const {
    if (kind != o.kind || t0 != o.t0 || nctrl != o.nctrl) return false;
    if (kind == GateKind::SWAP && t1 != o.t1) return false;
    for (int i = 0; i < nctrl; ++i)
        if (!(ctrl[i] == o.ctrl[i])) return false;
    return true;
}

bool Gate::well_formed(uint32_t width) const {
    if (nctrl > 3) return false;
    std::array<Wire, 5> w{};
    int k = 0;
    w[k++] = t0;
    if (kind == GateKind::SWAP) w[k++] = t1;
    for (int i = 0; i < nctrl; ++i) w[k++] = ctrl[i].wire;
    for (int i = 0; i < k; ++i) {
        if (w[i] >= width) return false;
        for (int j = 0; j < i; ++j)
            if (w[i] == w[j]) return false;
    }
    return true;
}

void Circuit::emit(GateSink& out) const {
    size_t m = 0;
    for (size_t i = 0; i <= gates.size(); ++i) {
        while (m < markers.size() && markers[m].first == i) out.marker(markers[m++].second);
        if (i < gates.size()) out.gate(gates[i]);
    }
}

void validate(const Circuit& c) {
    for (size_t i = 0; i < c.gates.size(); ++i)
        if (!c.gates[i].well_formed(c.width))
            throw CircuitError("gate " + std::to_string(i) + " is malformed: " + gate_text(c.gates[i]));
}

namespace {

bool fires(const Gate& g, const std::vector<uint8_t>& b) {
    for (int i = 0; i < g.nctrl; ++i)
        if ((b[g.ctrl[i].wire] != 0) != g.ctrl[i].positive) return false;
    return true;
}

}  // namespace

std::vector<uint8_t> apply(const Circuit& c, std::vector<uint8_t> bits) {
    if (bits.size() != c.width) throw CircuitError("apply: input length does not match circuit width");
    for (const Gate& g : c.gates) {
        if (!fires(g, bits)) continue;
        if (g.kind == GateKind::NOT)
            bits[g.t0] ^= 1;
        else
            std::swap(bits[g.t0], bits[g.t1]);
    }
    return bits;
}

Circuit invert(const Circuit& c) {
    Circuit r(c.width);
    r.layout = c.layout;
    r.gates.assign(c.gates.rbegin(), c.gates.rend());
    return r;
}

void lower_gate(const Gate& g, GateSink& out) {
    if (g.nctrl > 2 || (g.kind == GateKind::SWAP && g.nctrl > 1))
        throw CircuitError("lower: too many controls in " + gate_text(g));
    for (int i = 0; i < g.nctrl; ++i)
        if (!g.ctrl[i].positive) out.gate(Gate::x(g.ctrl[i].wire));
    if (g.kind == GateKind::NOT) {
        Gate h = g;
        for (int i = 0; i < h.nctrl; ++i) h.ctrl[i].positive = true;
        out.gate(h);
    } else if (g.nctrl == 0) {
        out.gate(Gate::cx(pos(g.t0), g.t1));
        out.gate(Gate::cx(pos(g.t1), g.t0));
        out.gate(Gate::cx(pos(g.t0), g.t1));
    } else {
        out.gate(Gate::cx(pos(g.t1), g.t0));
        out.gate(Gate::ccx(pos(g.ctrl[0].wire), pos(g.t0), g.t1));
        out.gate(Gate::cx(pos(g.t1), g.t0));
    }
    for (int i = g.nctrl - 1; i >= 0; --i)
        if (!g.ctrl[i].positive) out.gate(Gate::x(g.ctrl[i].wire));
}

Circuit lower(const Circuit& c) {
    Circuit r(c.width);
    r.layout = c.layout;
    size_t m = 0;
    for (size_t i = 0; i <= c.gates.size(); ++i) {
        while (m < c.markers.size() && c.markers[m].first == i) r.marker(c.markers[m++].second);
        if (i < c.gates.size()) lower_gate(c.gates[i], r);
    }
    return r;
}

GateCounts lowered_counts(const Gate& g) {
    GateCounts k;
    int negs = 0;
    for (int i = 0; i < g.nctrl; ++i) negs += !g.ctrl[i].positive;
    k.x = 2 * negs;
    if (g.kind == GateKind::NOT) {
        if (g.nctrl == 0) ++k.x;
        else if (g.nctrl == 1) ++k.cnot;
        else if (g.nctrl == 2) ++k.toffoli;
        else throw CircuitError("count: too many controls in " + gate_text(g));
    } else if (g.nctrl == 0) {
        k.cnot = 3;
    } else if (g.nctrl == 1) {
        k.cnot = 2;
        k.toffoli = 1;
    } else {
        throw CircuitError("count: too many controls in " + gate_text(g));
    }
    return k;
}

void GateCounter::gate(const Gate& g) {
    GateCounts k = lowered_counts(g);
    if (g.kind == GateKind::SWAP) swaps_ = true;
    total_ += k;
    blocks_[stack_.empty() ? std::string("other") : stack_.back()] += k;
}

void GateCounter::marker(std::string_view text) {
    if (text.rfind("begin ", 0) == 0) {
        std::string label(text.substr(6));
        if (auto at = label.find('@'); at != std::string::npos) label.resize(at);
        stack_.push_back(label);
    } else if (text == "end" && !stack_.empty()) {
        stack_.pop_back();
    }
}

ResourceReport GateCounter::report(uint32_t width) const {
    ResourceReport r;
    r.total = total_;
    r.swap_lowered = swaps_;
    r.width = width;
    r.per_block = blocks_;
    return r;
}

ResourceReport count(const Circuit& c) {
    GateCounter k;
    size_t m = 0;
    for (size_t i = 0; i <= c.gates.size(); ++i) {
        while (m < c.markers.size() && c.markers[m].first == i) k.marker(c.markers[m++].second);
        if (i == c.gates.size()) break;
        const Gate& g = c.gates[i];
        bool lowered = g.kind == GateKind::NOT && g.nctrl <= 2;
        for (int j = 0; j < g.nctrl; ++j) lowered = lowered && g.ctrl[j].positive;
        if (!lowered) throw CircuitError("count: unlowered gate " + std::to_string(i) + ": " + gate_text(g));
        k.gate(g);
    }
    return k.report(c.width);
}

void Simulator::gate(const Gate& g) {
    uint64_t m = ~uint64_t{0};
    for (int i = 0; i < g.nctrl; ++i) {
        uint64_t v = lanes[g.ctrl[i].wire];
        m &= g.ctrl[i].positive ? v : ~v;
    }
    if (g.kind == GateKind::NOT) {
        lanes[g.t0] ^= m;
    } else {
        uint64_t d = (lanes[g.t0] ^ lanes[g.t1]) & m;
        lanes[g.t0] ^= d;
        lanes[g.t1] ^= d;
    }
}

void Simulator::set(Wire w, int lane, bool v) {
    uint64_t bit = uint64_t{1} << lane;
    lanes[w] = v ? (lanes[w] | bit) : (lanes[w] & ~bit);
}

// Text format: "x t", "cx c t", "ccx c1 c2 t", "swap a b", "cswap c a b";
// a control written as "~w" has negative polarity.
std::string gate_text(const Gate& g) {
    static const char* nots[] = {"x", "cx", "ccx", "cccx"};
    static const char* swaps[] = {"swap", "cswap", "ccswap", "cccswap"};
    std::string s = g.kind == GateKind::NOT ? nots[std::min<int>(g.nctrl, 3)] : swaps[std::min<int>(g.nctrl, 3)];
    for (int i = 0; i < g.nctrl && i < 3; ++i) {
        s += ' ';
        if (!g.ctrl[i].positive) s += '~';
        s += std::to_string(g.ctrl[i].wire);
    }
    s += ' ' + std::to_string(g.t0);
    if (g.kind == GateKind::SWAP) s += ' ' + std::to_string(g.t1);
    return s;
}

TextWriter::TextWriter(std::string& out, uint32_t width) : out_(out) {
    out_ += "width=" + std::to_string(width) + "\n";
}

void TextWriter::gate(const Gate& g) {
    out_ += gate_text(g);
    out_ += '\n';
}

void TextWriter::marker(std::string_view text) {
    out_ += "# ";
    out_ += text;
    out_ += '\n';
}

std::string serialize(const Circuit& c) {
    std::string out;
    TextWriter w(out, c.width);
    c.emit(w);
    return out;
}

namespace {

[[noreturn]] void parse_error(size_t line, const std::string& msg) {
    throw CircuitError("line " + std::to_string(line) + ": " + msg);
}

uint32_t parse_index(std::string_view tok, size_t line) {
    uint32_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) parse_error(line, "bad wire index '" + std::string(tok) + "'");
    return v;
}

Gate gate_from_tokens(const std::vector<std::string>& tok, size_t line) {
    const std::string& op = tok[0];
    Gate g;
    int nctrl = 0;
    if (op == "x" || op == "cx" || op == "ccx") {
        g.kind = GateKind::NOT;
        nctrl = op == "x" ? 0 : op == "cx" ? 1 : 2;
    } else if (op == "swap" || op == "cswap") {
        g.kind = GateKind::SWAP;
        nctrl = op == "swap" ? 0 : 1;
    } else {
        parse_error(line, "unknown gate '" + op + "'");
    }
    size_t targets = g.kind == GateKind::SWAP ? 2 : 1;
    if (tok.size() != 1 + nctrl + targets) parse_error(line, "wrong operand count for '" + op + "'");
    g.nctrl = static_cast<uint8_t>(nctrl);
    for (int i = 0; i < nctrl; ++i) {
        std::string_view t = tok[1 + i];
        bool positive = true;
        if (!t.empty() && t[0] == '~') {
            positive = false;
            t.remove_prefix(1);
        }
        g.ctrl[i] = {parse_index(t, line), positive};
    }
    g.t0 = parse_index(tok[1 + nctrl], line);
    if (targets == 2) g.t1 = parse_index(tok[2 + nctrl], line);
    return g;
}

}  // namespace

Circuit parse(std::string_view text) {
    Circuit c;
    bool have_width = false;
    size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::string body = line.substr(first + 1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            c.marker(body);
            continue;
        }
        if (!have_width) {
            if (line.rfind("width=", first) != first) parse_error(line_no, "expected 'width=<W>'");
            c.width = parse_index(std::string_view(line).substr(first + 6), line_no);
            have_width = true;
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        Gate g = gate_from_tokens(tok, line_no);
        if (!g.well_formed(c.width)) parse_error(line_no, "duplicate or out-of-range wire in '" + line + "'");
        c.gate(g);
    }
    if (!have_width) parse_error(line_no, "missing 'width=<W>' header");
    return c;
}

std::string serialize_json(const Circuit& c) {
    using nlohmann::json;
    json gates = json::array();
    size_t m = 0;
    for (size_t i = 0; i <= c.gates.size(); ++i) {
        while (m < c.markers.size() && c.markers[m].first == i) gates.push_back({{"marker", c.markers[m++].second}});
        if (i == c.gates.size()) break;
        const Gate& g = c.gates[i];
        json ctrls = json::array();
        for (int k = 0; k < g.nctrl; ++k) ctrls.push_back({{"wire", g.ctrl[k].wire}, {"positive", g.ctrl[k].positive}});
        json targets = json::array({g.t0});
        if (g.kind == GateKind::SWAP) targets.push_back(g.t1);
        gates.push_back({{"kind", g.kind == GateKind::NOT ? "NOT" : "SWAP"}, {"targets", targets}, {"controls", ctrls}});
    }
    json doc = {{"width", c.width}, {"gates", gates}};
    if (!c.layout.empty()) doc["layout"] = c.layout;
    return doc.dump() + "\n";
}

Circuit parse_json(std::string_view text) {
    using nlohmann::json;
    Circuit c;
    try {
        json doc = json::parse(text);
        c.width = doc.at("width").get<uint32_t>();
        if (doc.contains("layout")) c.layout = doc["layout"].get<std::map<std::string, std::vector<Wire>>>();
        size_t idx = 0;
        for (const json& e : doc.at("gates")) {
            ++idx;
            if (e.contains("marker")) {
                c.marker(e["marker"].get<std::string>());
                continue;
            }
            Gate g;
            g.kind = e.at("kind").get<std::string>() == "SWAP" ? GateKind::SWAP : GateKind::NOT;
            const json& t = e.at("targets");
            g.t0 = t.at(0).get<Wire>();
            if (g.kind == GateKind::SWAP) g.t1 = t.at(1).get<Wire>();
            const json& cs = e.at("controls");
            if (cs.size() > 3) throw CircuitError("gate entry " + std::to_string(idx) + ": too many controls");
            g.nctrl = static_cast<uint8_t>(cs.size());
            for (size_t k = 0; k < cs.size(); ++k) g.ctrl[k] = {cs[k].at("wire").get<Wire>(), cs[k].at("positive").get<bool>()};
            if (!g.well_formed(c.width)) throw CircuitError("gate entry " + std::to_string(idx) + ": duplicate or out-of-range wire");
            c.gate(g);
        }
    } catch (const nlohmann::json::exception& e) {
        throw CircuitError(std::string("json: ") + e.what());
    }
    return c;
}

}  // namespace eea
