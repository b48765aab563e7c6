// uplane: Donaldson-invariant coefficient tables from the u-plane constant-term formulas.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uplane/checks.hpp"

namespace {

using namespace uplane;

constexpr int kExitMissing = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;

struct Rows {
    std::string target, group, mode;
    long precision = 0;
    std::vector<std::string> index_names;
    std::vector<std::pair<std::vector<int>, std::string>> rows;
};

template <typename C>
Rows to_rows(const InvariantTable<C> &t)
{
    Rows r;
    r.target = std::string(target_name(t.setup.target));
    r.group = std::string(group_name(t.group));
    r.mode = ring_traits<C>::mode;
    r.precision = t.precision;
    switch (t.setup.target) {
    case Target::CP2: r.index_names = {"m", "n"}; break;
    case Target::CP2hat: r.index_names = {"m", "n", "mu"}; break;
    case Target::P1xP1: r.index_names = {"m", "i", "j"}; break;
    }
    for (const auto &[k, v] : t.entries) {
        r.rows.emplace_back(k, ring_traits<C>::to_string(v));
    }
    return r;
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? "\"\"" : std::string(1, c);
    }
    return out + "\"";
}

void emit(const Rows &r, const std::string &format, std::ostream &os)
{
    if (format == "json") {
        nlohmann::ordered_json j;
        j["meta"] = {{"target", r.target}, {"group", r.group}, {"mode", r.mode}, {"precision", r.precision}};
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto &[idx, value] : r.rows) {
            j["rows"].push_back({{"target", r.target},
                                 {"group", r.group},
                                 {"mode", r.mode},
                                 {"indices", idx},
                                 {"value", value},
                                 {"precision_used", r.precision}});
        }
        os << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        os << "target,group,mode";
        for (const auto &n : r.index_names) {
            os << "," << n;
        }
        os << ",value,precision_used\r\n";
        for (const auto &[idx, value] : r.rows) {
            os << r.target << "," << r.group << "," << r.mode;
            for (int i : idx) {
                os << "," << i;
            }
            os << "," << csv_field(value) << "," << r.precision << "\r\n";
        }
        return;
    }
    os << "# " << r.target << " " << r.group << " " << r.mode << " precision " << r.precision << "\n";
    for (const auto &n : r.index_names) {
        os << std::setw(4) << n;
    }
    os << "  value\n";
    for (const auto &[idx, value] : r.rows) {
        for (int i : idx) {
            os << std::setw(4) << i;
        }
        os << "  " << value << "\n";
    }
}

void print_outcome(const checks::Outcome &o, std::ostream &os)
{
    os << (o.ok ? "ok   " : "FAIL ") << o.name << ": " << o.detail << " (" << std::fixed << std::setprecision(2)
       << o.seconds << " s)\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact Donaldson-invariant coefficients from u-plane constant terms"};
    app.require_subcommand(1);

    std::string data_file;
    app.add_option("--data", data_file, "coefficient table file (lines 'H5 value', 'R5 value'); default $UPLANE_DATA");

    // dtable
    auto *dtable = app.add_subcommand("dtable", "compute a generating-function coefficient table");
    std::string target = "cp2";
    std::string group = "so3";
    std::string mode = "auto";
    std::string format = "text";
    int max_p = 2;
    int max_kappa = 4;
    int mu_degree = 6;
    long precision = 0;
    dtable->add_option("--target", target)->check(CLI::IsMember({"cp2", "cp2hat", "p1xp1"}));
    dtable->add_option("--group", group)->check(CLI::IsMember({"su2", "so3"}));
    dtable->add_option("--max-p", max_p, "largest power of p")->check(CLI::NonNegativeNumber);
    dtable->add_option("--max-kappa", max_kappa, "largest kappa degree")->check(CLI::NonNegativeNumber);
    dtable->add_option("--mu-degree", mu_degree, "mu truncation for cp2hat")->check(CLI::NonNegativeNumber);
    dtable->add_option("--mode", mode)->check(CLI::IsMember({"auto", "numeric", "symbolic"}));
    dtable->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
    dtable->add_option("--precision", precision, "window in q^{1/8} steps (overrides the plan)")
        ->check(CLI::PositiveNumber);

    // forms
    auto *forms = app.add_subcommand("forms", "print a q-expansion");
    std::string form;
    int order = 8;
    forms->add_option("--name", form, "theta2 theta3 theta4 eta3 E2 u h T f2")->required();
    forms->add_option("--order", order, "print through q^order")->check(CLI::NonNegativeNumber);

    // hurwitz
    auto *hurwitz_cmd = app.add_subcommand("hurwitz", "Hurwitz class numbers");
    long hurwitz_max = 30;
    bool hurwitz_nonzero = false;
    hurwitz_cmd->add_option("--max", hurwitz_max, "largest n")->check(CLI::NonNegativeNumber);
    hurwitz_cmd->add_flag("--nonzero", hurwitz_nonzero, "skip vanishing entries");

    // check
    auto *check = app.add_subcommand("check", "run an invariant suite");
    std::string suite = "all";
    bool so3 = false;
    bool check_json = false;
    check->add_option("--suite", suite)->check(CLI::IsMember({"identities", "maass", "blowup", "tables", "wallcross", "all"}));
    check->add_flag("--so3", so3, "also run the SO(3) chamber difference (not part of 'all')");
    check->add_flag("--json", check_json, "machine-readable summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        CoefficientTables tables = CoefficientTables::from_environment();
        if (!data_file.empty()) {
            tables.load_file(data_file);
        }

        if (*dtable) {
            const Target t = target == "cp2" ? Target::CP2 : target == "cp2hat" ? Target::CP2hat : Target::P1xP1;
            const Group g = group == "su2" ? Group::SU2 : Group::SO3;
            Rows rows;
            if (mode != "symbolic") {
                try {
                    rows = to_rows(z_table<Rational>(t, g, max_p, max_kappa, mu_degree, tables, precision));
                } catch (const MissingCoefficient &e) {
                    if (mode == "numeric") {
                        std::cerr << "uplane: missing coefficient " << e.symbol() << ": " << e.what() << "\n";
                        return kExitMissing;
                    }
                    std::cerr << "uplane: " << e.symbol()
                              << " is not tabulated, switching to symbolic mode (pass --mode numeric to make this an error)\n";
                    mode = "symbolic";
                }
            }
            if (mode == "symbolic") {
                rows = to_rows(z_table<LinearForm>(t, g, max_p, max_kappa, mu_degree, tables, precision));
            }
            emit(rows, format, std::cout);
            return 0;
        }

        if (*forms) {
            const auto name = parse_form_name(form);
            if (!name) {
                std::cerr << "uplane: unknown form '" << form << "'\n" << forms->help();
                return kExitUsage;
            }
            std::cout << basic_form(*name, kDefaultDenom * order + 1).to_string() << "\n";
            return 0;
        }

        if (*hurwitz_cmd) {
            HurwitzTable h(hurwitz_max);
            for (long n = 0; n <= hurwitz_max; ++n) {
                if (!hurwitz_nonzero || !h(n).is_zero()) {
                    std::cout << n << " " << h(n).to_string() << "\n";
                }
            }
            return 0;
        }

        if (*check) {
            std::vector<checks::Outcome> out;
            const bool all = suite == "all";
            if (all || suite == "identities") {
                out.push_back(checks::identities());
            }
            if (all || suite == "maass") {
                out.push_back(checks::maass_data());
            }
            if (all || suite == "tables") {
                out.push_back(checks::golden_table());
            }
            if (all || suite == "blowup") {
                out.push_back(checks::blowup_kernels());
                out.push_back(checks::blowup_relations());
            }
            if (all || suite == "wallcross") {
                out.push_back(checks::wall_crossing(Group::SU2));
                out.push_back(checks::limiting_vanishing());
                if (so3) {
                    out.push_back(checks::wall_crossing(Group::SO3));
                }
            }
            bool ok = true;
            for (const auto &o : out) {
                ok = ok && o.ok;
            }
            if (check_json) {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto &o : out) {
                    j.push_back({{"name", o.name}, {"ok", o.ok}, {"detail", o.detail}});
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto &o : out) {
                    print_outcome(o, std::cout);
                }
            }
            return ok ? 0 : 1;
        }
    } catch (const MissingCoefficient &e) {
        std::cerr << "uplane: missing coefficient " << e.symbol() << ": " << e.what() << "\n";
        return kExitMissing;
    } catch (const InsufficientPrecision &e) {
        std::cerr << "uplane: insufficient precision: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::invalid_argument &e) {
        std::cerr << "uplane: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
