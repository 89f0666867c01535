// kqcoop command-line front end. Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kqcoop/comodule.hpp"
#include "kqcoop/ext.hpp"
#include "kqcoop/io.hpp"
#include "kqcoop/kq.hpp"
#include "kqcoop/verify.hpp"

using namespace kqcoop;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowFlags {
    int smax = 8, tmax = 20, wmin = -4, pad = 0;
    void add(CLI::App* app) {
        app->add_option("--smax", smax, "largest s reported");
        app->add_option("--tmax", tmax, "largest t reported");
        app->add_option("--wmin", wmin, "smallest weight");
        app->add_option("--pad", pad, "extra t columns (and pad/3 rows) computed but not reported");
    }
    Window window() const {
        if (smax < 0 || tmax < 0 || pad < 0) throw UsageError("malformed window: smax, tmax and pad must be >= 0");
        return Window{smax, tmax, wmin, pad};
    }
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

std::optional<std::filesystem::path> cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("KQCOOP_CACHE"); env && *env) return std::string(env);
    return std::nullopt;
}

std::string render(const ExtChart& ch, const std::string& format) {
    if (format == "json") return chart_to_json(ch);
    if (format == "tsv") return chart_to_tsv(ch);
    if (format == "svg") return chart_to_svg(ch);
    throw UsageError("unknown format '" + format + "'");
}

std::string split_tsv(const ExtChart& ch) {
    auto split = beta_torsion_split(ch);
    std::string out = "s\tt\tw\tfree\ttorsion\tundetermined\n";
    for (const auto& [c, d] : ch.dims) {
        if (!ch.reported(c)) continue;
        bool u = split.undetermined.count(c);
        auto get = [&](const std::map<Tri, int>& m) { return m.count(c) ? m.at(c) : 0; };
        out += std::to_string(c.s) + "\t" + std::to_string(c.t) + "\t" + std::to_string(c.w) + "\t" +
               (u ? "-" : std::to_string(get(split.free_part))) + "\t" + (u ? "-" : std::to_string(get(split.torsion_part))) + "\t" +
               (u ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kqcoop: Ext charts over the motivic A(1) dual, Brown-Gitler comodules and the kq-resolution"};
    app.require_subcommand(1);
    std::string out, format = "json", cache_flag;

    // ext
    auto* ext = app.add_subcommand("ext", "compute an Ext chart");
    std::string module = "M2";
    bool split = false;
    WindowFlags ext_w;
    ext->add_option("--module", module, "M2 | HZ<n> | kq<n> | HZ1^<k> | tensor:<spec>,<spec> | AmodA0 | AmodA1");
    ext_w.add(ext);
    ext->add_option("--out", out, "output file (default stdout)");
    ext->add_option("--format", format, "json | tsv | svg");
    ext->add_option("--cache-dir", cache_flag, "chart cache directory (also KQCOOP_CACHE)");
    ext->add_flag("--split", split, "emit the beta-torsion split as TSV (needs --pad >= 8)");

    // bg
    auto* bg = app.add_subcommand("bg", "emit a Brown-Gitler comodule as JSON");
    std::string kind = "integral";
    int bg_n = 1;
    bg->add_option("--kind", kind, "integral | kq")->check(CLI::IsMember({"integral", "kq"}));
    bg->add_option("--n", bg_n, "index")->check(CLI::NonNegativeNumber);
    bg->add_option("--out", out, "output file");

    // e1
    auto* e1 = app.add_subcommand("e1", "assemble a line of the E1 page");
    int line_n = 1;
    bool e1_check = false;
    WindowFlags e1_w;
    e1->add_option("--line", line_n, "line n")->check(CLI::NonNegativeNumber);
    e1_w.add(e1);
    e1->add_option("--out", out, "output file");
    e1->add_option("--format", format, "json | tsv");
    e1->add_flag("--check", e1_check, "run naive vanishing and h0-divisibility; exit 2 on failure");

    // einf
    auto* einf = app.add_subcommand("einf", "closed-form E-infinity 0- and 1-lines");
    int einf_t = 24, einf_w = -4;
    einf->add_option("--tmax", einf_t, "largest internal degree T");
    einf->add_option("--wmin", einf_w, "smallest weight");
    einf->add_option("--out", out, "output file");

    // margolis
    auto* marg = app.add_subcommand("margolis", "Margolis homology of a comodule");
    std::string which = "Q0";
    int marg_t = 20, marg_w = -4;
    marg->add_option("--module", module, "module spec");
    marg->add_option("--which", which, "Q0 | Q1")->check(CLI::IsMember({"Q0", "Q1"}));
    marg->add_option("--tmax", marg_t, "largest t");
    marg->add_option("--wmin", marg_w, "smallest weight");
    marg->add_option("--out", out, "output file");

    // verify
    auto* ver = app.add_subcommand("verify", "run invariant suites");
    std::string suite = "all";
    ver->add_option("--suite", suite, "all | linalg | steenrod | comodule | ext | kq | cli");

    // chart
    auto* chart = app.add_subcommand("chart", "re-emit a chart JSON file");
    std::string in;
    chart->add_option("--in", in, "chart JSON")->required();
    chart->add_option("--out", out, "output file");
    chart->add_option("--format", format, "json | tsv | svg");

    // stems
    auto* stems = app.add_subcommand("stems", "v1-periodic or eta-local stems from the closed forms");
    bool eta = false, v1 = false;
    int stem = 0;
    std::optional<int> wlo, whi;
    stems->add_flag("--eta", eta, "eta-local stems");
    stems->add_flag("--v1", v1, "v1-periodic stems");
    stems->add_option("--stem", stem, "stem")->required();
    stems->add_option("--wmin", wlo, "smallest weight");
    stems->add_option("--wmax", whi, "largest weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*ext) {
            Window w = ext_w.window();
            if (split && w.pad < 8) throw UsageError("--split needs --pad >= 8");
            ExtChart ch = chart_for(module, w, cache_dir(cache_flag));
            emit(split ? split_tsv(ch) : render(ch, format), out);
        } else if (*bg) {
            emit(comodule_to_json(brown_gitler(kind == "kq" ? BGKind::kq : BGKind::integral, bg_n)), out);
        } else if (*e1) {
            auto line = e1_line(line_n, e1_w.window());
            if (format == "tsv") {
                std::string text = "s\tt\tw\tdim\n";
                for (const auto& [c, d] : line.dims)
                    text += std::to_string(c.s) + "\t" + std::to_string(c.t) + "\t" + std::to_string(c.w) + "\t" + std::to_string(d) + "\n";
                emit(text, out);
            } else if (format == "json") {
                ordered_json j{{"line", line_n}};
                j["indices"] = ordered_json::array();
                for (const auto& [idx, ch] : line.charts) j["indices"].push_back(idx.str());
                j["cells"] = ordered_json::array();
                for (const auto& [c, d] : line.dims) j["cells"].push_back({{"s", c.s}, {"t", c.t}, {"w", c.w}, {"dim", d}});
                emit(j.dump(1) + "\n", out);
            } else {
                throw UsageError("e1 supports json and tsv");
            }
            if (e1_check) {
                bool ok = true;
                for (const auto& r : {check_naive_vanishing(line), check_h0_divisibility(line)})
                    for (const auto& v : r.violations) {
                        std::cerr << "violation: " << v << "\n";
                        ok = false;
                    }
                if (!ok) return 2;
            }
        } else if (*einf) {
            std::string text;
            for (const auto& l : e_infinity_lines(einf_t, einf_w)) text += closed_form_json(l) + "\n";
            emit(text, out);
        } else if (*marg) {
            Comodule m = module_from_spec(module, marg_t + 3, marg_w);
            std::string text = "t\tw\tdim\n";
            for (const auto& [tw, d] : margolis(m, which == "Q0" ? Margolis::Q0 : Margolis::Q1, marg_t, marg_w))
                text += std::to_string(tw.first) + "\t" + std::to_string(tw.second) + "\t" + std::to_string(d) + "\n";
            emit(text, out);
        } else if (*ver) {
            bool ok = true;
            for (const auto& r : run_suites(suite)) {
                std::printf("%-9s %s  (%zu checks)\n", r.name.c_str(), r.pass ? "ok" : "FAILED", r.checks);
                for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
                ok = ok && r.pass;
            }
            return ok ? 0 : 2;
        } else if (*chart) {
            std::ifstream f(in);
            if (!f) throw UsageError("cannot read " + in);
            std::stringstream ss;
            ss << f.rdbuf();
            emit(render(chart_from_json(ss.str()), format), out);
        } else if (*stems) {
            if (eta == v1) throw UsageError("give exactly one of --eta, --v1");
            if (eta) {
                int lo = wlo.value_or((stem + 1) / 2), hi = whi.value_or(stem);
                for (int w = lo; w <= hi; ++w)
                    if (auto g = eta_local_stems(stem, w)) std::printf("%d\t%d\t%s\n", stem, w, g->c_str());
            } else {
                for (const auto& g : v1_periodic_stems(stem, wlo.value_or(-4), whi.value_or(stem + 1)))
                    std::printf("%d\t%d\t%s\t%s\n", g.stem, g.w, g.group.c_str(), g.gen.c_str());
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
