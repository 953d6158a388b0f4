#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eea {

struct BlockCoefficient {
    std::string block;
    double coeff;  // multiplies n^2 log2 n, one loop direction
};

// Leading-term Toffoli coefficients per block, c = 1 / log2(phi).
std::vector<BlockCoefficient> block_coefficients();
double inversion_coefficient();  // 2 (80c - 13)

int inversion_width(int n);  // 3n + 4 floor(log2 n) + 20
int ecdlp_width(int n);      // 5n + 4 floor(log2 n) + 21, constant fitted
inline constexpr int ecdlp_width_constant = 21;

struct BlockEstimate {
    std::string block;
    double coeff;
    double toffoli;  // both loop directions
};

std::vector<BlockEstimate> per_block_breakdown(int n);
double inversion_toffoli_leading(int n);
double inversion_cnot_leading(int n);

// One point addition: 4 inversions, 4 multiplications, 1 squaring.
inline constexpr int point_addition_inversions = 4;
inline constexpr int point_addition_products = 5;
inline constexpr int product_coefficient = 32;
inline constexpr int point_addition_coefficient = 976;

struct EcdlpTotals {
    int window = 0;
    double window_count = 0;      // 2n / w
    double point_addition_cost = 0;  // 976 n^2 log2 n
    double toffoli_leading = 0;   // window_count * point_addition_cost
    double lookup_per_window = 0;  // 6 * 2^(w-1), outside the leading term
};

int default_window(int n);  // 2 ceil(log2 n)
// Throws std::invalid_argument when w < 1.
EcdlpTotals ecdlp_totals(int n, std::optional<int> w = {});

struct ReferenceCounts {
    double toffoli, cnot;
};
std::optional<ReferenceCounts> reference_counts(int n);
std::optional<int> reference_ecdlp_width(int n);

struct MeasuredCounts {
    double toffoli, cnot;
    int width;
};

struct ReportRow {
    int n;
    std::optional<ReferenceCounts> ref_counts;
    std::optional<int> ref_ecdlp_width;
    double model_toffoli, model_cnot;
    int model_inversion_width, model_ecdlp_width;
    std::optional<MeasuredCounts> measured;
};

const std::vector<int>& report_sizes();
std::vector<ReportRow> table_report(const std::map<int, MeasuredCounts>& measured = {});

struct PriorWidth {
    std::string source, formula;
};
const std::vector<PriorWidth>& prior_inversion_widths();

std::string report_tsv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);

}  // namespace eea
