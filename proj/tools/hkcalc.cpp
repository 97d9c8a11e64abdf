// hkcalc: command-line front end for the Hilbert-Kunz library.
//
// Exit codes: 0 ok, 1 user error, 2 cap exceeded, 3 corpus failure.

#include <hk/acceptance.hpp>
#include <hk/hk.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_user = 1;
constexpr int exit_cap = 2;
constexpr int exit_corpus = 3;

std::string join(const std::vector<std::int64_t>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string join(const std::vector<hk::Rational>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].str();
    return s;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> out;
    for (const auto& t : hk::detail::split(s, ',')) out.push_back(static_cast<std::int64_t>(hk::detail::to_u64("list", t)));
    if (out.empty()) throw hk::config_error("empty integer list");
    return out;
}

unsigned exponent_of(std::uint64_t q, std::uint64_t p) {
    unsigned e = 0;
    for (; q > 1; q /= p) ++e;
    return e;
}

/// Metadata lines start with "#! " so they never collide with the config echo.
void write_header(std::ostream& out, const hk::RunConfig& cfg, const hk::IdealSpec& ideal) {
    out << hk::echo_as_comment(cfg.raw());
    out << "#! p = " << cfg.p() << "\n";
    out << "#! n = " << ideal.size() << "\n";
    out << "#! degrees = " << join(ideal.degrees()) << "\n";
    try {
        out << "#! degY = " << ideal.ring().curve_degree() << "\n";
    } catch (const hk::ring_error&) {
    }
}

int cmd_compute(const hk::RunConfig& cfg, bool per_degree_flag, std::ostream& out) {
    const hk::IdealSpec ideal = cfg.ideal();
    const auto qs = cfg.qs();
    if (qs.empty()) throw hk::config_error("compute needs 'q' or 'e'");
    const hk::HKFunctionTable table = hk::hk_table(ideal, qs, cfg.limits());
    write_header(out, cfg, ideal);
    if (per_degree_flag || cfg.per_degree()) {
        out << "q,m,colength\n";
        for (const auto& [q, row] : table.rows)
            for (std::int64_t m = 0; m < row.cutoff; ++m) out << q << "," << m << "," << row.colength(m) << "\n";
    } else {
        out << "q,phi\n";
        for (const auto& [q, row] : table.rows) out << q << "," << row.phi << "\n";
    }
    return exit_ok;
}

int cmd_splitting(const hk::RunConfig& cfg, std::ostream& out) {
    const hk::IdealSpec ideal = cfg.ideal();
    hk::P1Options opt;
    opt.max_e = cfg.max_e();
    opt.limits = cfg.limits();
    if (cfg.get("q") || cfg.get("e")) opt.qs = cfg.qs();
    if (hk::frobenius_power(cfg.field(), opt.max_e) > cfg.max_q())
        throw hk::cap_exceeded_error("p^max_e exceeds max_q = " + std::to_string(cfg.max_q()));
    const hk::P1Analysis a = hk::analyze_p1(ideal, opt);

    out << hk::echo_as_comment(cfg.raw());
    out << "p = " << cfg.p() << "\n";
    out << "degrees = " << join(ideal.degrees()) << "\n";
    for (const auto& s : a.splittings) out << "twists[" << s.q << "] = " << join(s.twists) << "\n";
    if (!a.hn) {
        out << "stabilized = no\n";
        return exit_ok;
    }
    out << "stabilized = yes\n";
    out << "stabilized_at = " << a.stabilized_q1 << "," << a.stabilized_q2 << "\n";
    out << "ranks = " << join(a.hn->ranks) << "\n";
    out << "thresholds = " << join(a.hn->thresholds) << "\n";
    out << "ehk = " << a.ehk->str() << "\n";
    for (const auto& r : a.residuals)
        out << "residual[" << r.q << "] = phi " << r.phi << " deviation " << r.deviation.str() << "\n";
    return exit_ok;
}

struct TableData {
    std::map<std::string, std::string> meta;
    std::map<std::uint64_t, std::uint64_t> phi;
};

TableData read_table(std::istream& in) {
    TableData t;
    std::string line, header;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("#! ", 0) == 0) {
            auto eq = line.find('=');
            if (eq != std::string::npos)
                t.meta[hk::detail::trim(line.substr(3, eq - 3))] = hk::detail::trim(line.substr(eq + 1));
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = hk::detail::trim(line);
            if (header != "q,phi" && header != "q,m,colength") throw hk::config_error("unrecognized table header '" + header + "'");
            continue;
        }
        auto cells = hk::detail::split(line, ',');
        const std::string where = "table line " + std::to_string(lineno);
        if (header == "q,phi" && cells.size() == 2) {
            t.phi[hk::detail::to_u64(where, cells[0])] = hk::detail::to_u64(where, cells[1]);
        } else if (header == "q,m,colength" && cells.size() == 3) {
            t.phi[hk::detail::to_u64(where, cells[0])] += hk::detail::to_u64(where, cells[2]);
        } else {
            throw hk::config_error(where + ": wrong number of fields");
        }
    }
    if (header.empty()) throw hk::config_error("table has no header row");
    return t;
}

int cmd_reconstruct(std::istream& table_in, std::optional<std::int64_t> bound, std::optional<hk::Rational> window,
                    std::ostream& out) {
    TableData t = read_table(table_in);
    auto need = [&](const char* key) {
        auto it = t.meta.find(key);
        if (it == t.meta.end())
            throw hk::config_error(std::string("table lacks '#! ") + key + "' metadata; pass --bound and --window");
        return it->second;
    };
    if (!bound) {
        const auto p = hk::detail::to_u64("p", need("p"));
        const auto n = hk::detail::to_u64("n", need("n"));
        const auto degy = static_cast<std::int64_t>(hk::detail::to_u64("degY", need("degY")));
        unsigned e_cap = 0;
        for (const auto& [q, v] : t.phi) e_cap = std::max(e_cap, exponent_of(q, p));
        bound = hk::DenominatorBound::standard(n, degy, p, e_cap).bound;
    }
    if (!window) {
        std::int64_t s = 0;
        for (auto d : parse_int_list(need("degrees"))) s += d;
        window = hk::Rational(4 * s);
    }
    const hk::Reconstruction r = hk::estimate_ehk(t.phi, hk::DenominatorBound{*bound}, *window);
    out << "ehk = " << r.value.str() << "\n";
    out << "estimate = " << r.estimate.str() << "\n";
    out << "from_q = " << r.q1 << "," << r.q2 << "\n";
    out << "denominator_bound = " << r.bound << "\n";
    out << "window = " << r.window.str() << "\n";
    for (const auto& row : r.residuals) out << "residual_per_q[" << row.q << "] = " << row.per_q.str() << "\n";
    return exit_ok;
}

/// "r:nu,r:nu" with nu rational.
hk::HNData parse_hn(const std::string& spec, std::size_t n, std::int64_t deg_y) {
    hk::HNData hn;
    hn.n = n;
    hn.deg_y = deg_y;
    for (const auto& part : hk::detail::split(spec, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) throw hk::config_error("--hn expects r:nu pairs, got '" + part + "'");
        hn.ranks.push_back(static_cast<std::int64_t>(hk::detail::to_u64("rank", hk::detail::trim(part.substr(0, colon)))));
        hn.thresholds.push_back(hk::Rational::parse(part.substr(colon + 1)));
    }
    return hn;
}

struct FormulaArgs {
    std::string hn, d, nu2;
    std::int64_t deg_y = 1, h = 0, r2 = 1, add = 0;
    bool plane_curve = false, semistable = false, t2 = false, n3 = false;
};

int cmd_formula(const FormulaArgs& a, std::ostream& out) {
    const int modes = a.plane_curve + a.semistable + a.t2 + a.n3 + !a.hn.empty();
    if (modes != 1) throw hk::config_error("choose exactly one of --hn, --plane-curve, --semistable, --t2, --n3");
    if (a.plane_curve) {
        if (a.h <= 0 || a.nu2.empty()) throw hk::config_error("--plane-curve needs --h and --nu2");
        out << hk::ehk_plane_curve(a.h, hk::Rational::parse(a.nu2)).str() << "\n";
        return exit_ok;
    }
    if (a.d.empty()) throw hk::config_error("--d is required");
    const auto d = parse_int_list(a.d);
    if (a.semistable) {
        out << hk::ehk_strongly_semistable(d, d.size(), a.deg_y).str() << "\n";
    } else if (a.t2) {
        if (a.nu2.empty()) throw hk::config_error("--t2 needs --nu2");
        out << hk::ehk_t2(a.r2, hk::Rational::parse(a.nu2), d, d.size(), a.deg_y).str() << "\n";
    } else if (a.n3) {
        if (a.nu2.empty()) throw hk::config_error("--n3 needs --nu2");
        out << hk::ehk_n3(hk::Rational::parse(a.nu2), d, a.deg_y).str() << "\n";
    } else {
        hk::HNData hn = parse_hn(a.hn, d.size(), a.deg_y);
        if (a.add > 0) {
            auto [hn2, d2] = hk::add_generator(hn, d, a.add);
            out << hk::ehk_from_hn(hn2, d2).str() << "\n";
        } else {
            out << hk::ehk_from_hn(hn, d).str() << "\n";
        }
    }
    return exit_ok;
}

/// Corpus manifest: one entry per line, fields separated by '|':
///   name | command | argument | expected | source
struct CorpusEntry {
    std::string name, command, argument, expected, source;
};

std::vector<CorpusEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw hk::config_error("cannot read corpus manifest '" + path.string() + "'");
    std::vector<CorpusEntry> out;
    std::string line;
    while (std::getline(in, line)) {
        line = hk::detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, '|');) f.push_back(hk::detail::trim(cell));
        if (f.size() != 5) throw hk::config_error("manifest line needs 5 fields: " + line);
        out.push_back({f[0], f[1], f[2], f[3], f[4]});
    }
    return out;
}

std::map<std::string, std::string> parse_kv(const std::string& report) {
    std::map<std::string, std::string> kv;
    std::istringstream in(report);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq != std::string::npos) kv[hk::detail::trim(line.substr(0, eq))] = hk::detail::trim(line.substr(eq + 1));
    }
    return kv;
}

/// Runs one entry and returns an empty string on success, else a reason.
std::string run_entry(const CorpusEntry& e, const std::filesystem::path& dir) {
    std::ostringstream out;
    if (e.command == "formula") {
        std::vector<std::string> argv{"formula"};
        std::istringstream in(e.argument);
        for (std::string tok; in >> tok;) argv.push_back(tok);
        FormulaArgs a;
        for (std::size_t i = 1; i < argv.size(); ++i) {
            const auto& k = argv[i];
            auto next = [&]() -> std::string {
                if (i + 1 >= argv.size()) throw hk::config_error("missing value for " + k);
                return argv[++i];
            };
            if (k == "--plane-curve") a.plane_curve = true;
            else if (k == "--semistable") a.semistable = true;
            else if (k == "--t2") a.t2 = true;
            else if (k == "--n3") a.n3 = true;
            else if (k == "--hn") a.hn = next();
            else if (k == "--d") a.d = next();
            else if (k == "--nu2") a.nu2 = next();
            else if (k == "--degY") a.deg_y = std::stoll(next());
            else if (k == "--h") a.h = std::stoll(next());
            else if (k == "--r2") a.r2 = std::stoll(next());
            else if (k == "--add") a.add = std::stoll(next());
            else throw hk::config_error("unknown formula argument " + k);
        }
        cmd_formula(a, out);
        std::string got = hk::detail::trim(out.str());
        return got == e.expected ? "" : "got " + got;
    }
    const hk::RunConfig cfg = hk::RunConfig::load((dir / e.argument).string());
    if (e.command == "compute") {
        cmd_compute(cfg, false, out);
        std::istringstream in(out.str());
        TableData t = read_table(in);
        std::string got;
        for (auto [q, v] : t.phi) got += (got.empty() ? "" : ",") + std::to_string(q) + ":" + std::to_string(v);
        return got == e.expected ? "" : "got " + got;
    }
    if (e.command == "reconstruct") {
        cmd_compute(cfg, false, out);
        std::istringstream in(out.str());
        std::ostringstream rep;
        cmd_reconstruct(in, cfg.denominator_bound(), cfg.window_constant(), rep);
        std::string got = parse_kv(rep.str())["ehk"];
        return got == e.expected ? "" : "got " + got;
    }
    if (e.command == "splitting") {
        cmd_splitting(cfg, out);
        auto kv = parse_kv(out.str());
        std::string got = "ranks=" + kv["ranks"] + ";thresholds=" + kv["thresholds"] + ";ehk=" + kv["ehk"];
        return got == e.expected ? "" : "got " + got;
    }
    throw hk::config_error("unknown corpus command '" + e.command + "'");
}

int cmd_verify_corpus(const std::filesystem::path& dir, bool with_acceptance, std::ostream& out) {
    bool ok = true;
    for (const auto& e : read_manifest(dir / "manifest.txt")) {
        std::string why;
        try {
            why = run_entry(e, dir);
        } catch (const std::exception& ex) {
            why = std::string("error: ") + ex.what();
        }
        out << (why.empty() ? "[PASS] " : "[FAIL] ") << e.name << " (" << e.source << ")";
        if (!why.empty()) out << ": expected " << e.expected << ", " << why;
        out << "\n";
        ok = ok && why.empty();
    }
    if (with_acceptance) {
        hk::acceptance::run_all([&](const hk::acceptance::CriterionResult& r) {
            out << hk::acceptance::format(r) << "\n";
            out.flush();
            ok = ok && r.passed;
        });
    }
    out << (ok ? "corpus: all passed\n" : "corpus: FAILURES\n");
    return ok ? exit_ok : exit_corpus;
}

std::filesystem::path default_corpus_dir() {
#ifdef HK_CORPUS_DIR
    return HK_CORPUS_DIR;
#else
    return "corpus";
#endif
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-Kunz multiplicity calculator"};
    app.require_subcommand(1);

    std::string config_path, table_path, out_path;
    bool per_degree = false, no_acceptance = false;
    std::optional<std::int64_t> bound;
    std::string window_text;
    FormulaArgs fa;
    std::string corpus_dir = default_corpus_dir().string();

    auto* compute = app.add_subcommand("compute", "phi(q) table as CSV");
    compute->add_option("--config", config_path, "run configuration")->required()->check(CLI::ExistingFile);
    compute->add_flag("--per-degree", per_degree, "emit q,m,colength rows instead of q,phi");
    compute->add_option("--out", out_path, "write to a file instead of stdout");

    auto* splitting = app.add_subcommand("splitting", "splitting types and HN data on P^1");
    splitting->add_option("--config", config_path, "run configuration")->required()->check(CLI::ExistingFile);
    splitting->add_option("--out", out_path, "write to a file instead of stdout");

    auto* formula = app.add_subcommand("formula", "evaluate the e_HK formula");
    formula->set_help_flag("--help", "Print this help message and exit"); // --h is the curve degree
    formula->add_option("--hn", fa.hn, "HN data as r:nu pairs, e.g. 2:3/2 or 1:4,1:5");
    formula->add_option("--d", fa.d, "generator degrees, comma separated");
    formula->add_option("--degY", fa.deg_y, "deg O_Y(1)");
    formula->add_flag("--plane-curve", fa.plane_curve, "cone over a plane curve");
    formula->add_option("--h", fa.h, "plane curve degree");
    formula->add_option("--nu2", fa.nu2, "largest threshold nu_2");
    formula->add_flag("--semistable", fa.semistable, "strongly semistable syzygy bundle");
    formula->add_flag("--t2", fa.t2, "two-step filtration given by --r2 and --nu2");
    formula->add_option("--r2", fa.r2, "rank of the second step");
    formula->add_flag("--n3", fa.n3, "three generators given --nu2");
    formula->add_option("--add", fa.add, "adjoin a redundant generator of this degree to --hn");

    auto* reconstruct = app.add_subcommand("reconstruct", "round phi(q) values to e_HK");
    auto* table_opt = reconstruct->add_option("--table", table_path, "CSV written by compute")->check(CLI::ExistingFile);
    reconstruct->add_option("--config", config_path, "compute the table from a configuration instead")
        ->check(CLI::ExistingFile)
        ->excludes(table_opt);
    reconstruct->add_option("--bound", bound, "largest accepted denominator");
    reconstruct->add_option("--window", window_text, "window constant K (window = K / q1)");

    auto* verify = app.add_subcommand("verify-corpus", "run the known-answer corpus and acceptance suite");
    verify->add_option("--corpus", corpus_dir, "corpus directory holding manifest.txt");
    verify->add_flag("--no-acceptance", no_acceptance, "skip the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_user;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    auto open_out = [&] {
        if (out_path.empty()) return;
        file.open(out_path);
        if (!file) throw hk::config_error("cannot write '" + out_path + "'");
        out = &file;
    };

    try {
        if (*compute) {
            open_out();
            return cmd_compute(hk::RunConfig::load(config_path), per_degree, *out);
        }
        if (*splitting) {
            open_out();
            return cmd_splitting(hk::RunConfig::load(config_path), *out);
        }
        if (*formula) return cmd_formula(fa, std::cout);
        if (*reconstruct) {
            std::optional<hk::Rational> window;
            if (!window_text.empty()) window = hk::Rational::parse(window_text);
            if (!config_path.empty()) {
                const auto cfg = hk::RunConfig::load(config_path);
                std::ostringstream table;
                cmd_compute(cfg, false, table);
                std::istringstream in(table.str());
                if (!bound) bound = cfg.denominator_bound();
                if (!window) window = cfg.window_constant();
                return cmd_reconstruct(in, bound, window, std::cout);
            }
            if (table_path.empty()) throw hk::config_error("reconstruct needs --table or --config");
            std::ifstream in(table_path);
            return cmd_reconstruct(in, bound, window, std::cout);
        }
        if (*verify) return cmd_verify_corpus(corpus_dir, !no_acceptance, std::cout);
    } catch (const hk::cap_exceeded_error& e) {
        std::cerr << "hkcalc: cap exceeded: " << e.what() << "\n";
        return exit_cap;
    } catch (const hk::ambiguous_reconstruction& e) {
        std::cerr << "hkcalc: ambiguous reconstruction: " << e.what() << "\n";
        return exit_user;
    } catch (const std::exception& e) {
        std::cerr << "hkcalc: error: " << e.what() << "\n";
        return exit_user;
    }
    return exit_user;
}
