// Acceptance battery: one PASS/FAIL line per criterion.
// Exit status is nonzero only for failures outside the documented
// known-unattainable list.

#include <cstdio>
#include <string>

#include "bergman_lab/suites.hpp"

int main()
{
    using namespace bergman_lab;
    int unexpected = 0;
    auto report = [&](const SuiteRow& r) {
        const bool known = !r.passed && r.known_unattainable;
        std::printf("criterion %-2s %s  %s [%.1f s]\n    %s\n", r.id.c_str(),
                    r.passed ? "PASS" : (known ? "FAIL (known unattainable)" : "FAIL"), r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.passed && !known)
            ++unexpected;
    };

    report(acceptance_littlewood_paley());
    report(acceptance_volterra_spectrum());
    report(acceptance_adjoint_identity());
    report(acceptance_kernel_transform());
    report(acceptance_schatten_threshold());
    report(acceptance_downward_threshold());
    report(acceptance_geometry());
    report(acceptance_doubling());
    report(acceptance_reproducing());

    std::vector<SuiteRow> pairs;
    SuiteRow agreement = acceptance_agreement(&pairs);
    for (const auto& p : pairs)
        std::printf("    pair %-2s %s  %s: %s\n", p.id.c_str(), p.passed ? "agree" : "DISAGREE", p.name.c_str(),
                    p.detail.c_str());
    agreement.passed = agreement.passed && agreement.seconds < 900.0;
    agreement.detail += ", " + detail::fmt(agreement.seconds) + " s (limit 900 s)";
    report(agreement);

    std::printf("%s: %d unexpected failure(s)\n", unexpected ? "ACCEPTANCE FAILED" : "acceptance done", unexpected);
    return unexpected ? 1 : 0;
}
