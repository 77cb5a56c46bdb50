#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace asgard {

struct VerifyOptions {
    bool quick = false;  // trimmed horizons for unit-test use

    // Negative controls. When either is active the suite runs only the
    // corresponding tampered checks, which are expected to report violations.
    double tau_inflate = 1.0;        // multiply tau_k (k >= 1) before Eq.-style checks
    double beta0_scale_case2 = 1.0;  // shrink the Case-2 beta0 below its threshold

    std::uint64_t seed = 0x5ca1ab1eULL;
};

struct VerifyRow {
    std::string quantity;
    long k = 0;
    double measured = 0;
    double bound = 0;
    double slack = 0;  // scaled excess of measured over bound; > 0 fails
    bool pass = true;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;  // worst case per quantity plus every violation
    long checks = 0;
    long violations = 0;
    double worst_slack = 0;
    std::string worst_quantity;
    long worst_k = 0;
    bool pass() const { return violations == 0; }
};

VerifyReport run_verify_suite(const VerifyOptions& opts);

// CSV columns: quantity, k, measured, bound, slack, pass; one summary line
// at the end with the worst slack.
void write_verify_csv(const VerifyReport& report, std::ostream& out);

}  // namespace asgard
