// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "rll/suite.hpp"

#include <cstdio>

int main()
{
    rll::suite::Options o;
    o.data_path = std::string(RLL_DATA_DIR) + "/q_stub.json";
    int failed = 0;
    for (auto& e : rll::suite::registry()) {
        rll::suite::Outcome r;
        try {
            r = e.run(o);
        } catch (const std::exception& ex) {
            r.key = e.key;
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        char timing[64];
        if (r.limit_seconds > 0) std::snprintf(timing, sizeof timing, "%.3g s, limit %.0f s", r.seconds, r.limit_seconds);
        else std::snprintf(timing, sizeof timing, "%.3g s", r.seconds);
        std::printf("[%s] %d %s: %s | %s | %s\n", r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.title.c_str(), r.detail.c_str(), timing);
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%s: %d of %zu criteria failed\n", failed ? "FAIL" : "PASS", failed, rll::suite::registry().size());
    return failed ? 1 : 0;
}
