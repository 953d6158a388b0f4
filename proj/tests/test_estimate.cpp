#include <gtest/gtest.h>

#include <cmath>

#include "eea/estimate.hpp"
#include "eea/numeric.hpp"

using namespace eea;

TEST(Estimate, Widths) {
    EXPECT_EQ(inversion_width(256), 820);
    EXPECT_EQ(inversion_width(8), 56);
    for (int n : {160, 192, 224, 256, 384, 521}) EXPECT_EQ(ecdlp_width(n), *reference_ecdlp_width(n)) << n;
    EXPECT_EQ(1333 - 5 * 256 - 4 * 8, ecdlp_width_constant);
}

TEST(Estimate, Coefficients) {
    double sum = 0;
    for (const auto& b : block_coefficients()) sum += b.coeff;
    EXPECT_NEAR(sum, 80 * golden_c() - 13, 1e-12);
    EXPECT_NEAR(inversion_coefficient(), 204.47, 0.01);
    EXPECT_DOUBLE_EQ(inversion_cnot_leading(64), inversion_toffoli_leading(64) / 2);
    double parts = 0;
    for (const auto& b : per_block_breakdown(256)) parts += b.toffoli;
    EXPECT_NEAR(parts, inversion_toffoli_leading(256), 1e-3);
    EXPECT_NEAR(inversion_toffoli_leading(256), 1.07e8, 0.01e8);
}

TEST(Estimate, Ecdlp) {
    EXPECT_EQ(4 * 204 + 4 * 32 + 32, point_addition_coefficient);
    EcdlpTotals t = ecdlp_totals(256);
    EXPECT_EQ(t.window, 16);
    EXPECT_DOUBLE_EQ(t.window_count, 32);
    EXPECT_NEAR(t.toffoli_leading / std::pow(256.0, 3), 976, 1e-9);
    EcdlpTotals one = ecdlp_totals(64, 1);
    EXPECT_DOUBLE_EQ(one.window_count, 128);
    EXPECT_THROW(ecdlp_totals(64, 0), std::invalid_argument);
}

TEST(Estimate, Report) {
    auto rows = table_report({{64, {8.7e6, 6.4e6, 236}}});
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_DOUBLE_EQ(rows.front().ref_counts->toffoli, 0.10e8);
    EXPECT_DOUBLE_EQ(rows[7].ref_counts->toffoli, 6.24e8);
    EXPECT_FALSE(rows.back().ref_counts.has_value());
    EXPECT_EQ(*rows.back().ref_ecdlp_width, 2662);
    std::string tsv = report_tsv(rows);
    EXPECT_NE(tsv.find("64\tmeasured"), std::string::npos);
    EXPECT_NE(tsv.find("fitted"), std::string::npos);
    EXPECT_NE(report_json(rows).find("\"fitted\": true"), std::string::npos);
    EXPECT_EQ(prior_inversion_widths().size(), 5u);
}
