#include "wicm/coiflet.hpp"
#include "wicm/published.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace wicm;

TEST_CASE("embedded integral table") {
    const auto& rows = published::integral_table();
    REQUIRE(rows.size() == 17);
    CHECK(rows.front().k == 1);
    CHECK(rows.back().k == 17);
    CHECK(published::integral_reference(17, 1) == 1.0);
    CHECK(published::integral_reference(1, 4) == doctest::Approx(-4.830484119726849e-13).epsilon(1e-12));
}

TEST_CASE("errata are single dropped digits") {
    const auto& errata = published::integral_table_errata();
    REQUIRE(errata.size() == 2);
    for (const auto& e : errata) {
        CHECK(published::is_single_dropped_digit(e.printed, e.corrected));
        CHECK(published::integral_reference(e.k, e.tuple) == std::stod(std::string(e.corrected)));
        bool found = false;
        for (const auto& row : published::integral_table())
            if (row.k == e.k) found = row.printed[static_cast<std::size_t>(e.tuple - 1)] == e.printed;
        CHECK(found);
    }
    CHECK(published::is_single_dropped_digit("1.2345", "1.23945"));
    CHECK_FALSE(published::is_single_dropped_digit("1.2345", "1.2345"));
    CHECK_FALSE(published::is_single_dropped_digit("1.2345", "1.234567"));
    CHECK_FALSE(published::is_single_dropped_digit("1.2345", "1.2355"));
}

TEST_CASE("computed table matches published values") {
    const ScalingTables t = build_scaling_tables(load_filter(), 4);
    double worst = 0.0;
    for (int k = 1; k <= 17; ++k)
        for (int n = 1; n <= 4; ++n) {
            const double ref = published::integral_reference(k, n);
            worst = std::max(worst, std::abs(t.integral_at(n, k) - ref) / std::abs(ref));
        }
    CHECK(worst <= 1e-9);
}

TEST_CASE("condition and accuracy tables are complete") {
    CHECK(published::condition_table().size() == 4);
    CHECK(published::condition_table().front().level == 4);
    CHECK(published::condition_alphas()[0][4] == 1.0);
    CHECK(published::condition_table().back().condition[0] == doctest::Approx(1.4442));
    const auto& acc = published::accuracy_table();
    REQUIRE(acc.size() == 9);
    CHECK(acc[4].x == doctest::Approx(0.5));
    CHECK(acc[4].wavelet_17 == doctest::Approx(6.66134e-15));
    CHECK(acc[0].wavelet_17 == doctest::Approx(1.33227e-15));
}
