#include "eea/estimate.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "eea/numeric.hpp"

namespace eea {

std::vector<BlockCoefficient> block_coefficients() {
    double c = golden_c();
    return {{"r_addsub", 32 * c + 8},
            {"loc_swap", 4 * c + 1},
            {"t_addsub", 32 * c - 16},
            {"len_lt", 6 * c},
            {"len_lrp", 6 * c - 6}};
}

double inversion_coefficient() { return 2 * (80 * golden_c() - 13); }

int inversion_width(int n) { return 3 * n + 4 * floor_log2(n) + 20; }
int ecdlp_width(int n) { return 5 * n + 4 * floor_log2(n) + ecdlp_width_constant; }

static double n2logn(int n) { return double(n) * n * std::log2(double(n)); }

std::vector<BlockEstimate> per_block_breakdown(int n) {
    std::vector<BlockEstimate> out;
    for (const auto& b : block_coefficients())
        out.push_back({b.block, b.coeff, 2 * b.coeff * n2logn(n)});
    return out;
}

double inversion_toffoli_leading(int n) { return inversion_coefficient() * n2logn(n); }
double inversion_cnot_leading(int n) { return inversion_toffoli_leading(n) / 2; }

int default_window(int n) { return 2 * (bitlen(uint64_t(n) - 1)); }

EcdlpTotals ecdlp_totals(int n, std::optional<int> w) {
    int win = w ? *w : default_window(n);
    if (win < 1) throw std::invalid_argument("window size must be at least 1");
    EcdlpTotals t;
    t.window = win;
    t.window_count = 2.0 * n / win;
    t.point_addition_cost = point_addition_coefficient * n2logn(n);
    t.toffoli_leading = t.window_count * t.point_addition_cost;
    t.lookup_per_window = 6 * std::ldexp(1.0, win - 1);
    return t;
}

std::optional<ReferenceCounts> reference_counts(int n) {
    static const std::map<int, ReferenceCounts> t = {
        {64, {0.10e8, 0.07e8}},  {128, {0.44e8, 0.32e8}}, {160, {0.78e8, 0.54e8}},
        {192, {1.12e8, 0.77e8}}, {224, {1.51e8, 1.04e8}}, {256, {1.97e8, 1.36e8}},
        {384, {3.53e8, 3.28e8}}, {512, {6.24e8, 5.82e8}}};
    auto it = t.find(n);
    if (it == t.end()) return std::nullopt;
    return it->second;
}

std::optional<int> reference_ecdlp_width(int n) {
    static const std::map<int, int> t = {{160, 849},  {192, 1009}, {224, 1169},
                                         {256, 1333}, {384, 1973}, {521, 2662}};
    auto it = t.find(n);
    if (it == t.end()) return std::nullopt;
    return it->second;
}

const std::vector<int>& report_sizes() {
    static const std::vector<int> s = {64, 128, 160, 192, 224, 256, 384, 512, 521};
    return s;
}

std::vector<ReportRow> table_report(const std::map<int, MeasuredCounts>& measured) {
    std::vector<ReportRow> rows;
    for (int n : report_sizes()) {
        ReportRow r{n,
                    reference_counts(n),
                    reference_ecdlp_width(n),
                    inversion_toffoli_leading(n),
                    inversion_cnot_leading(n),
                    inversion_width(n),
                    ecdlp_width(n),
                    std::nullopt};
        if (auto it = measured.find(n); it != measured.end()) r.measured = it->second;
        rows.push_back(r);
    }
    return rows;
}

const std::vector<PriorWidth>& prior_inversion_widths() {
    static const std::vector<PriorWidth> t = {
        {"Proos-Zalka, no register sharing", "5n + 4log2(n) + O(1)"},
        {"Proos-Zalka, register sharing", "3n + 8sqrt(n) + 4log2(n) + O(1)"},
        {"Roetteler et al.", "7n + 2log2(n) + O(1)"},
        {"Haner et al.", "7n + log2(n) + O(1)"},
        {"this circuit", "3n + 4log2(n) + O(1)"}};
    return t;
}

static std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string report_tsv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "# ecdlp width constant " << ecdlp_width_constant << " is fitted to the reference widths\n";
    os << "n\ttag\ttoffoli\tcnot\tinversion_width\tecdlp_width\n";
    auto opt = [](auto v) { return v ? num(double(*v)) : std::string("-"); };
    for (const auto& r : rows) {
        if (r.ref_counts || r.ref_ecdlp_width)
            os << r.n << "\treference\t"
               << (r.ref_counts ? num(r.ref_counts->toffoli) : "-") << '\t'
               << (r.ref_counts ? num(r.ref_counts->cnot) : "-") << "\t-\t"
               << opt(r.ref_ecdlp_width) << '\n';
        os << r.n << "\tmodel\t" << num(r.model_toffoli) << '\t' << num(r.model_cnot) << '\t'
           << r.model_inversion_width << '\t' << r.model_ecdlp_width << '\n';
        if (r.measured)
            os << r.n << "\tmeasured\t" << num(r.measured->toffoli) << '\t'
               << num(r.measured->cnot) << '\t' << r.measured->width << "\t-\n";
    }
    return os.str();
}

std::string report_json(const std::vector<ReportRow>& rows) {
    using nlohmann::json;
    json j;
    j["ecdlp_width_constant"] = {{"value", ecdlp_width_constant}, {"fitted", true}};
    j["inversion_coefficient"] = inversion_coefficient();
    j["rows"] = json::array();
    for (const auto& r : rows) {
        json row;
        row["n"] = r.n;
        row["model"] = {{"toffoli", r.model_toffoli},
                        {"cnot", r.model_cnot},
                        {"inversion_width", r.model_inversion_width},
                        {"ecdlp_width", r.model_ecdlp_width}};
        json ref = json::object();
        if (r.ref_counts) {
            ref["toffoli"] = r.ref_counts->toffoli;
            ref["cnot"] = r.ref_counts->cnot;
        }
        if (r.ref_ecdlp_width) ref["ecdlp_width"] = *r.ref_ecdlp_width;
        if (!ref.empty()) row["reference"] = ref;
        if (r.measured)
            row["measured"] = {{"toffoli", r.measured->toffoli},
                               {"cnot", r.measured->cnot},
                               {"inversion_width", r.measured->width}};
        j["rows"].push_back(row);
    }
    json prior = json::array();
    for (const auto& p : prior_inversion_widths())
        prior.push_back({{"source", p.source}, {"qubits", p.formula}});
    j["prior_inversion_widths"] = prior;
    return j.dump(2);
}

}  // namespace eea
