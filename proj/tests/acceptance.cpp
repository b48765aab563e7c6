// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <iomanip>
#include <iostream>

#include "uplane/checks.hpp"

using namespace uplane;
using checks::Outcome;

namespace {

/// Merges outcomes into one criterion line, failing it if any part fails or the time limit is exceeded.
bool report(int id, const std::string &title, const std::vector<Outcome> &parts, double limit_s = 0)
{
    bool ok = true;
    double seconds = 0;
    std::string detail;
    for (const auto &p : parts) {
        ok = ok && p.ok;
        seconds += p.seconds;
        detail += (detail.empty() ? "" : " | ") + p.name + ": " + p.detail;
    }
    if (limit_s > 0 && seconds >= limit_s) {
        ok = false;
        detail += " | over the " + std::to_string(static_cast<int>(limit_s)) + " s limit";
    }
    std::cout << "criterion " << id << " " << (ok ? "PASS" : "FAIL") << "  " << title << " (" << std::fixed
              << std::setprecision(2) << seconds << " s)  " << detail << "\n";
    return ok;
}

} // namespace

int main()
{
    bool ok = true;
    ok &= report(1, "golden D table, 8 numeric + 8 symbolic", {checks::golden_table()}, 10);
    ok &= report(2, "Hurwitz table, Q11+ through q^2, M(q^8)", {checks::maass_data()});
    ok &= report(3, "blowup kernels vs series, polynomial in u", {checks::blowup_kernels(64)});
    ok &= report(4, "blowup relations for m+n <= 4", {checks::blowup_relations(4)}, 60);
    ok &= report(5, "wall crossing on CP1xCP1, SU(2), m <= 2, i+j <= 6", {checks::wall_crossing(Group::SU2, 2, 6)}, 120);
    ok &= report(6, "limiting chamber vanishes for rho_g != 0", {checks::limiting_vanishing()});
    ok &= report(7, "theta identities over 256 steps, E2 through q^25", {checks::identities(256)});
    ok &= report(8, "stability under window + 8", {checks::stability(60)});
    return ok ? 0 : 1;
}
