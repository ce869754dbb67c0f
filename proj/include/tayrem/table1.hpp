#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tayrem/enhance.hpp"

namespace tayrem {

// v rounded to the given count of significant decimal digits.
double round_sig(double v, int digits);

// True when a and b agree after rounding both to `digits` significant digits.
bool sig_match(double a, double b, int digits);

struct Table1Row {
    MetricsRow computed;
    double delta_t_ref = 0.0;
    double delta_t_band_lo = 0.0;
    double delta_t_band_hi = 0.0;
    double delta_cs_ref = 0.0;
    double b_u_ref = 0.0;
    bool delta_t_ok = false;  // inside the band
    bool delta_cs_ok = false;  // <= 1e-10 absolute and <= 1e-12 * delta_t
    bool b_u_ok = false;       // 2 significant digits against the reference
};

// Runs both worked examples and checks them against the stored references.
std::vector<Table1Row> compute_table1();

std::string format_table1(const std::vector<Table1Row>& rows);

void write_table1_csv(const std::vector<Table1Row>& rows,
                      const std::filesystem::path& dir);

}  // namespace tayrem
