#include "wicm/published.hpp"

#include <stdexcept>
#include <string>

namespace wicm::published {

const std::vector<IntegralTableRow>& integral_table() {
    static const std::vector<IntegralTableRow> rows = {
        {1, {"-4.527262019294291E-09", "-2.640542520280718E-10", "-1.177917982279285E-11", "-4.830484119726849E-13"}},
        {2, {"3.793659018256384E-06", "4.419887973421076E-07", "3.940901828183616E-08", "3.231226434268301E-09"}},
        {3, {"2.929388903777156E-06", "-3.394779202257466E-06", "-1.601106900878482E-06", "-1.390327115561728E-07"}},
        {4, {"-3.134173582887661E-03", "-7.269055985025437E-04", "-1.280198775311740E-04", "-2.128451273233253E-05"}},
        {5, {"2.264311126637817E-02", "3.381871078932003E-03", "-1.008794458421603E-03", "-8.249450856216146E-04"}},
        {6, {"-8.486417521139951E-02", "-9.611317252824955E-03", "5.958177925875930E-03", "2.387016412381357E-03"}},
        {7, {"5.234649707003830E-01", "9.430655504920177E-02", "-3.787403971467576E-03", "-3.184751382798324E-03"}},
        {8, {"1.051493179855499E+00", "9.976688497344420E-01", "4.980359246292250E-01", "1.666535756413486E-01"}},
        {9, {"9.875787622086671E-01", "1.997725744751554E+00", "2.001481573098073E+00", "1.333433158829295E+00"}},
        {10, {"1.003591003107596E+00", "3.000516645305960E+00", "4.499416305495880E+00", "4.500187806094493E+00"}},
        {11, {"9.991452076341547E-01", "4.000084460530419E+00", "8.000033233268191E+00", "1.066664726952882E+01"}},
        {12, {"1.000073554299164E+00", "4.999990068904882E+00", "1.250000065760564E+01", "2.083333339909631E+01"}},
        {13, {"1.000001685301915E+00", "6.000000321738184E+00", "1.799999990934045E+01", "3.600000000204158E+01"}},
        {14, {"1.000000156123390E+00", "6.99999992224733E+00", "2.44999999879408E+01", "5.716666666713520E+01"}},
        {15, {"9.99999997921172E-01", "7.9999999985318E+00", "3.20000000005910E+01", "8.533333333347005E+01"}},
        {16, {"1.00000000000944E+00", "9.00000000012078E+00", "4.05000000006736E+01", "1.215000000001882E+02"}},
        {17, {"1.00000000000000E+00", "1.00000000000843E+01", "5.00000000006850E+01", "1.666666666668998E+02"}},
    };
    return rows;
}

const std::vector<Erratum>& integral_table_errata() {
    static const std::vector<Erratum> errata = {
        {14, 2, "6.99999992224733E+00", "6.999999992224733E+00"},
        {15, 1, "9.99999997921172E-01", "9.999999997921172E-01"},
    };
    return errata;
}

bool is_single_dropped_digit(std::string_view printed, std::string_view corrected) {
    if (corrected.size() != printed.size() + 1) return false;
    for (std::size_t skip = 0; skip < corrected.size(); ++skip) {
        if (corrected.substr(0, skip) == printed.substr(0, skip) &&
            corrected.substr(skip + 1) == printed.substr(skip))
            return true;
    }
    return false;
}

double integral_reference(int k, int tuple) {
    if (tuple < 1 || tuple > 4) throw std::out_of_range("tuple must be in 1..4");
    for (const auto& e : integral_table_errata())
        if (e.k == k && e.tuple == tuple) return std::stod(std::string(e.corrected));
    for (const auto& row : integral_table())
        if (row.k == k) return std::stod(std::string(row.printed[static_cast<std::size_t>(tuple - 1)]));
    throw std::out_of_range("k must be in 1..17");
}

const std::array<std::array<double, 5>, 3>& condition_alphas() {
    static const std::array<std::array<double, 5>, 3> alphas = {{
        {1.0, 1.0, 1.0, 1.0, 1.0},
        {1.0, 1.0, 1.0, 1.0, 0.5},
        {0.1, 0.1, 0.1, 0.1, 1.0},
    }};
    return alphas;
}

const std::vector<ConditionRow>& condition_table() {
    static const std::vector<ConditionRow> rows = {
        {4, {1.0261, 2.1037, 1.0135}, {1.4944, 2.1130, 1.0552}},
        {5, {1.0135, 2.0536, 1.0127}, {1.4661, 2.0404, 1.0530}},
        {6, {1.0069, 2.0274, 1.0123}, {1.4516, 2.0028, 1.0519}},
        {7, {1.0035, 2.0139, 1.0121}, {1.4442, 1.9838, 1.0513}},
    };
    return rows;
}

const std::vector<AccuracyRow>& accuracy_table() {
    static const std::vector<AccuracyRow> rows = {
        {0.1, 2.78e-8, 7.5e-9, 2.92411e-12, 1.33227e-15},
        {0.2, 8.09e-8, 1.5e-9, 4.00524e-12, 3.10862e-15},
        {0.3, 1.20e-7, 2.1e-9, 6.16573e-12, 5.99520e-15},
        {0.4, 1.25e-7, 2.3e-9, 8.32978e-12, 7.32747e-15},
        {0.5, 9.56e-8, 2.4e-9, 9.41269e-12, 6.66134e-15},
        {0.6, 4.82e-8, 2.4e-9, 1.15699e-11, 3.99680e-15},
        {0.7, 7.38e-9, 2.4e-9, 1.26406e-11, 1.99840e-15},
        {0.8, 1.07e-8, 2.2e-9, 1.48117e-11, 1.11022e-15},
        {0.9, 7.08e-9, 1.4e-9, 1.56586e-11, 1.55431e-15},
    };
    return rows;
}

}  // namespace wicm::published
