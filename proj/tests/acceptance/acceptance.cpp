// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <string>

#include "graphdist/verify.hpp"

int main(int argc, char** argv) {
    using namespace graphdist::verify;
    const Profile profile = argc > 1 ? profile_from_string(argv[1]) : Profile::Desk;
    int failed = 0;
    for (int id = 1; id <= count(); ++id) {
        const CheckResult r = run(id, profile);
        failed += !r.passed;
        std::printf("%s %2d %-28s %8.3f s  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed (profile %s)\n", count() - failed, count(), to_string(profile).c_str());
    return failed == 0 ? 0 : 1;
}
