// systolica: systoles, volumes and systolic ratios of the flat
// non-orientable 3-manifolds and their singular suspension competitors.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "systolica/bavard.hpp"
#include "systolica/bieberbach.hpp"
#include "systolica/mesh.hpp"
#include "systolica/rng.hpp"
#include "systolica/suspension.hpp"

namespace {

using nlohmann::json;
using namespace systolica;

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 64;

struct Sink {
    std::string path;
    std::ofstream file;

    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
        }
        return file;
    }
};

std::string fmt6(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    return os.str();
}

std::string fmt_sci(double x) {
    std::ostringstream os;
    os << std::setprecision(3) << x;
    return os.str();
}

std::vector<BType> selected_types(const std::string& filter) {
    if (filter.empty())
        return {BType::B1, BType::B2, BType::B3, BType::B4};
    return {btype_from_string(filter)};
}

const char* iso_kind_name(suspension::IsoKind k) {
    switch (k) {
        case suspension::IsoKind::Rotation: return "rotation";
        case suspension::IsoKind::ScrewT: return "screw";
        case suspension::IsoKind::S1: return "s1";
        case suspension::IsoKind::S2: return "s2";
    }
    return "?";
}

json spec_moduli(const BieberbachSpec& s) {
    json a = json::array();
    for (int i = 0; i < s.moduli_count(); ++i) a.push_back(s.m[i]);
    return a;
}

json report_json(const suspension::RatioReport& row) {
    return json{{"type", to_string(row.type)},
                {"flat_exact", row.flat_exact},
                {"flat_value", row.flat_value},
                {"singular_exact", row.singular_exact},
                {"singular_value", row.singular_value},
                {"argmax",
                 {{"flat_moduli", spec_moduli(row.flat_argmax)},
                  {"base", iso_kind_name(row.singular_argmax.base_iso.kind)},
                  {"angle", row.singular_argmax.base_iso.angle},
                  {"d", row.singular_argmax.d}}}};
}

int cmd_table(const std::string& type_filter, const std::string& format, Sink& sink) {
    auto rows = suspension::table_report();
    if (!type_filter.empty()) {
        BType want = btype_from_string(type_filter);
        std::erase_if(rows, [&](const auto& r) { return r.type != want; });
    }
    auto& os = sink.stream();
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(report_json(r));
        os << arr.dump(2) << '\n';
    } else if (format == "csv") {
        os << "type,flat_exact,flat_value,singular_exact,singular_value\n";
        for (const auto& r : rows)
            os << to_string(r.type) << ',' << r.flat_exact << ','
               << fmt6(r.flat_value) << ',' << r.singular_exact << ','
               << fmt6(r.singular_value) << '\n';
    } else {
        os << "type  flat optimum                        singular suspension\n";
        for (const auto& r : rows)
            os << to_string(r.type) << "    " << r.flat_exact << " = "
               << fmt6(r.flat_value) << std::string(
                      r.flat_exact.size() + 11 < 34 ? 34 - r.flat_exact.size() - 11 : 2,
                      ' ')
               << r.singular_exact << " = " << fmt6(r.singular_value) << '\n';
    }
    for (const auto& r : rows)
        if (!(r.singular_value > r.flat_value)) return kExitAssert;
    return kExitOk;
}

BieberbachSpec spec_from_moduli(BType type, const std::vector<double>& m) {
    switch (type) {
        case BType::B1:
            if (m.size() != 4) break;
            return BieberbachSpec::b1(m[0], m[1], m[2], m[3]);
        case BType::B2:
            if (m.size() != 4) break;
            return BieberbachSpec::b2(m[0], m[1], m[2], m[3]);
        case BType::B3:
            if (m.size() != 3) break;
            return BieberbachSpec::b3(m[0], m[1], m[2]);
        case BType::B4:
            if (m.size() != 3) break;
            return BieberbachSpec::b4(m[0], m[1], m[2]);
    }
    throw std::invalid_argument("wrong moduli count for type " + to_string(type));
}

int cmd_flat(const std::string& type_name, const std::vector<double>& moduli,
             const std::string& format, double skew, Sink& sink) {
    BType type = btype_from_string(type_name);
    BieberbachSpec spec = moduli.empty() ? optimal_flat_ratio(type).argmax
                                         : spec_from_moduli(type, moduli);
    double vol = flat_volume(spec);
    double closed = flat_systole_closed(spec);
    double enumd = flat_systole_enum(spec) + skew;
    double ratio = closed * closed * closed / vol;
    bool consistent = std::abs(closed - enumd) <= 1e-9;

    auto& os = sink.stream();
    if (format == "json") {
        os << json{{"type", to_string(spec.type)},
                   {"moduli", spec_moduli(spec)},
                   {"volume", vol},
                   {"systole_closed", closed},
                   {"systole_enum", enumd},
                   {"ratio", ratio},
                   {"consistent", consistent}}
                  .dump(2)
           << '\n';
    } else if (format == "csv") {
        os << "type,volume,systole_closed,systole_enum,ratio,consistent\n"
           << to_string(spec.type) << ',' << fmt6(vol) << ',' << fmt6(closed)
           << ',' << fmt6(enumd) << ',' << fmt6(ratio) << ','
           << (consistent ? 1 : 0) << '\n';
    } else {
        os << "type " << to_string(spec.type) << "\nmoduli";
        for (int i = 0; i < spec.moduli_count(); ++i) os << ' ' << fmt6(spec.m[i]);
        os << "\nvolume " << fmt6(vol) << "\nsystole_closed " << fmt6(closed)
           << "\nsystole_enum " << fmt6(enumd) << "\nratio " << fmt6(ratio)
           << '\n';
        if (!consistent)
            os << "WARNING: closed-form and enumerated systoles disagree\n";
    }
    return consistent ? kExitOk : kExitInconsistent;
}

int cmd_suspension(const std::string& type_name, double angle, double d,
                   const std::string& format, Sink& sink) {
    BType type = btype_from_string(type_name);
    suspension::SuspensionOptimum opt = suspension::optimize_suspension(type);
    suspension::SuspensionSpec spec = opt.spec;
    if (angle > 0) spec.base_iso.angle = angle;
    if (d > 0) spec.d = d;
    auto detail = suspension::suspension_systole_detail(spec);
    double vol = suspension::suspension_volume(spec);
    double ratio = detail.value * detail.value * detail.value / vol;

    auto& os = sink.stream();
    if (format == "json") {
        os << json{{"type", to_string(type)},
                   {"base", iso_kind_name(spec.base_iso.kind)},
                   {"angle", spec.base_iso.angle},
                   {"d", spec.d},
                   {"systole", detail.value},
                   {"volume", vol},
                   {"ratio", ratio},
                   {"conclusive", detail.conclusive}}
                  .dump(2)
           << '\n';
    } else if (format == "csv") {
        os << "type,base,angle,d,systole,volume,ratio,conclusive\n"
           << to_string(type) << ',' << iso_kind_name(spec.base_iso.kind) << ','
           << fmt6(spec.base_iso.angle) << ',' << fmt6(spec.d) << ','
           << fmt6(detail.value) << ',' << fmt6(vol) << ',' << fmt6(ratio)
           << ',' << (detail.conclusive ? 1 : 0) << '\n';
    } else {
        os << "type " << to_string(type) << "\nbase "
           << iso_kind_name(spec.base_iso.kind) << "\nangle "
           << fmt6(spec.base_iso.angle) << "\nd " << fmt6(spec.d)
           << "\nsystole " << fmt6(detail.value) << "\nvolume " << fmt6(vol)
           << "\nratio " << fmt6(ratio) << "\nconclusive "
           << (detail.conclusive ? "yes" : "no") << '\n';
    }
    return detail.conclusive ? kExitOk : kExitAssert;
}

const char* flat_csv_header(BType t) {
    switch (t) {
        case BType::B1: return "a1,lambda,v,ratio";
        case BType::B2: return "lambda,v,d,ratio";
        case BType::B3:
        case BType::B4: return "a1,a2,ratio";
    }
    return "";
}

int cmd_scan(const std::string& type_name, int grid, bool singular, Sink& sink) {
    BType type = btype_from_string(type_name);
    auto& os = sink.stream();
    if (singular) {
        auto best = suspension::scan_suspension(type, grid);
        auto closed = suspension::optimize_suspension(type);
        os << "angle,d,ratio\n";
        os << fmt6(best.spec.base_iso.angle) << ',' << fmt6(best.spec.d) << ','
           << fmt6(best.ratio) << '\n';
        os << "# incumbent ratio " << fmt6(best.ratio) << ", gap to closed optimum "
           << fmt6(closed.ratio - best.ratio) << '\n';
        return best.ratio <= closed.ratio + 1e-9 ? kExitOk : kExitAssert;
    }
    auto result = scan_flat(type, grid, 4, true);
    auto closed = optimal_flat_ratio(type);
    int cols = type == BType::B1 || type == BType::B2 ? 3 : 2;
    os << flat_csv_header(type) << '\n';
    for (const auto& row : result.grid_rows) {
        for (int i = 0; i < cols; ++i) os << fmt6(row[i]) << ',';
        os << fmt6(row[3]) << '\n';
    }
    os << "# incumbent";
    for (int i = 0; i < result.best.moduli_count(); ++i)
        os << ' ' << fmt6(result.best.m[i]);
    os << ", ratio " << fmt6(result.ratio) << ", gap to closed optimum "
       << fmt6(closed.ratio - result.ratio) << '\n';
    return result.ratio <= closed.ratio + 1e-9 ? kExitOk : kExitAssert;
}

int cmd_verify(const std::string& suite, double h, int samples, std::uint64_t seed,
               Sink& sink) {
    auto& os = sink.stream();
    bool ok = true;

    if (suite == "all" || suite == "flat") {
        double max_diff = 0, max_excess = -1;
        std::uint64_t state = seed;
        for (BType t : {BType::B1, BType::B2, BType::B3, BType::B4}) {
            double bound = optimal_flat_ratio(t).ratio;
            for (int i = 0; i < samples; ++i) {
                BieberbachSpec s = random_spec(t, state);
                max_diff = std::max(
                    max_diff, std::abs(flat_systole_enum(s) - flat_systole_closed(s)));
                max_excess = std::max(max_excess, flat_ratio(s) - bound);
            }
        }
        bool pass = max_diff <= 1e-9 && max_excess <= 1e-9;
        ok = ok && pass;
        os << "suite flat: samples " << samples << "/type, max |enum-closed| "
           << fmt_sci(max_diff) << ", max ratio excess " << fmt_sci(max_excess)
           << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (suite == "all" || suite == "mesh") {
        auto rep = mesh::verify_closed_forms(h, samples, seed);
        bool pass = rep.max_rel_err <= 0.02 && rep.no_undershoot;
        ok = ok && pass;
        os << "suite mesh: h " << fmt6(h) << ", samples " << rep.samples
           << ", max rel err " << fmt_sci(100.0 * rep.max_rel_err)
           << "%, min margin " << fmt_sci(rep.min_margin) << ' '
           << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (suite == "convergence") {
        auto coarse = mesh::verify_closed_forms(h, samples, seed);
        auto fine = mesh::verify_closed_forms(h / 2.0, samples, seed);
        double factor = coarse.max_rel_err / fine.max_rel_err;
        bool pass = factor >= 1.7 && fine.max_rel_err <= 0.02 &&
                    coarse.no_undershoot && fine.no_undershoot;
        ok = ok && pass;
        os << "suite convergence: " << fmt_sci(100.0 * coarse.max_rel_err)
           << "% -> " << fmt_sci(100.0 * fine.max_rel_err) << "%, factor "
           << fmt6(factor)
           << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kExitOk : kExitAssert;
}

int cmd_mesh_dump(double h, int patches, Sink& sink) {
    mesh::SurfaceMesh m(std::numbers::pi / 4.0, patches, h);
    m.dump(sink.stream());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"systolic ratios of flat non-orientable 3-manifolds and their "
                 "singular suspension competitors"};
    app.require_subcommand(1);

    std::string type_filter, format = "text", out_path, suite = "all";
    std::string flat_type = "B1", susp_type, scan_type;
    std::vector<double> moduli;
    double h = 0.02, skew = 0.0, angle = 0.0, d = 0.0;
    int samples = 100, grid = 64, patches = 3;
    std::uint64_t seed = 42;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--out", out_path);
    };

    auto* table = app.add_subcommand("table", "flat vs singular comparison table");
    table->add_option("--type", type_filter);
    add_common(table);

    auto* flat = app.add_subcommand("flat", "systole/volume/ratio of one flat metric");
    flat->add_option("--type", flat_type)->required();
    flat->add_option("moduli", moduli, "moduli (4 for B1/B2, 3 for B3/B4)");
    flat->add_option("--skew", skew)->group("");  // fault injection, hidden
    add_common(flat);

    auto* susp = app.add_subcommand("suspension", "one singular suspension metric");
    susp->add_option("--type", susp_type)->required();
    susp->add_option("--angle", angle, "override the base isometry angle");
    susp->add_option("--d", d, "override the translation length");
    add_common(susp);

    auto* scan = app.add_subcommand("scan", "grid+refinement scan of ratios");
    scan->add_option("--type", scan_type)->required();
    scan->add_option("--grid", grid);
    bool singular = false;
    scan->add_flag("--singular", singular, "scan suspension parameters instead");
    add_common(scan);

    auto* verify = app.add_subcommand("verify", "property battery");
    verify->set_help_flag("--help", "print help");  // frees -h for --h
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember({"all", "flat", "mesh", "convergence"}));
    verify->add_option("--h", h);
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    add_common(verify);

    auto* dump = app.add_subcommand("mesh-dump", "plain-text node table of a mesh");
    dump->set_help_flag("--help", "print help");
    dump->add_option("--h", h);
    dump->add_option("--patches", patches);
    add_common(dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Sink sink{out_path, {}};
    try {
        if (table->parsed()) return cmd_table(type_filter, format, sink);
        if (flat->parsed()) return cmd_flat(flat_type, moduli, format, skew, sink);
        if (susp->parsed()) return cmd_suspension(susp_type, angle, d, format, sink);
        if (scan->parsed()) return cmd_scan(scan_type, grid, singular, sink);
        if (verify->parsed()) return cmd_verify(suite, h, samples, seed, sink);
        if (dump->parsed()) return cmd_mesh_dump(h, patches, sink);
    } catch (const mesh::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitAssert;
    }
    return kExitUsage;
}
