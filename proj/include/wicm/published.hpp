#pragma once

// Reference values printed in the source tables, kept verbatim so tests can
// diff against them.

#include <array>
#include <string_view>
#include <vector>

namespace wicm::published {

/// φ^∫n(k), k = 1..17, n = 1..4 for the N = 6 Coiflet, as printed.
struct IntegralTableRow {
    int k;
    std::array<std::string_view, 4> printed;
};
const std::vector<IntegralTableRow>& integral_table();

/// Printed entries that lost a digit in typesetting.
struct Erratum {
    int k;
    int tuple;
    std::string_view printed;
    std::string_view corrected;
};
const std::vector<Erratum>& integral_table_errata();

/// True when `corrected` is `printed` with exactly one extra character inserted.
bool is_single_dropped_digit(std::string_view printed, std::string_view corrected);

/// The reference value to test against: corrected if listed as an erratum,
/// otherwise the printed value.
double integral_reference(int k, int tuple);

/// Condition diagnostics of the fourth-order system matrix at j = 4..7 for
/// three coefficient sets.
struct ConditionRow {
    int level;
    std::array<double, 3> inverse_norm;
    std::array<double, 3> condition;
};
const std::array<std::array<double, 5>, 3>& condition_alphas();
const std::vector<ConditionRow>& condition_table();

/// Absolute errors at x = 0.1..0.9 for the clamped fourth-order problem with
/// 17 collocation points.
struct AccuracyRow {
    double x;
    double rkhsm_101;
    double nrkhsm_101;
    double bernstein_17;
    double wavelet_17;
};
const std::vector<AccuracyRow>& accuracy_table();

}  // namespace wicm::published
