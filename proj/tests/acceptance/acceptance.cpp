// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "dt4/verify.hpp"

#include <cstdio>

int main()
{
    int failed = 0;
    for (const auto& id : dt4::criterion_ids()) {
        dt4::CriterionResult r = dt4::run_criterion(id);
        std::printf("%s %2d %-16s %7.2fs%s%s\n", r.pass ? "PASS" : "FAIL", r.index, r.id.c_str(), r.seconds,
                    r.pass ? "" : "  ", r.detail.c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(dt4::criterion_ids().size()) - failed,
                dt4::criterion_ids().size());
    return failed == 0 ? 0 : 1;
}
