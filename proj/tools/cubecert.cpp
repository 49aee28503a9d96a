#include "cubecert/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace cubecert;

namespace {

std::vector<std::pair<std::string, std::string>> load_inputs(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, std::string>> out;
    std::vector<fs::path> files;
    for (const auto& p : paths) {
        fs::path path(p);
        if (fs::is_directory(path)) {
            std::vector<fs::path> here;
            for (const auto& ent : fs::directory_iterator(path))
                if (ent.is_regular_file() && ent.path().extension() == ".cyc")
                    here.push_back(ent.path());
            std::sort(here.begin(), here.end());
            files.insert(files.end(), here.begin(), here.end());
        } else if (fs::is_regular_file(path)) {
            files.push_back(path);
        } else {
            throw Error("no such file or directory: " + p);
        }
    }
    if (files.empty()) throw Error("no catalog files found");
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw Error("cannot read " + f.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        out.emplace_back(f.string(), ss.str());
    }
    return out;
}

Assignment parse_specialize(const std::string& text) {
    Assignment at;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq != 1)
            throw Error("--specialize expects a=N[/D],b=...,c=...");
        auto sym = sym_from_char(item[0]);
        if (!sym || *sym == Sym::x || *sym == Sym::y)
            throw Error("--specialize names must be a, b, c");
        std::string val = item.substr(eq + 1);
        long num = 0, den = 1;
        auto slash = val.find('/');
        num = std::stol(val.substr(0, slash));
        if (slash != std::string::npos) den = std::stol(val.substr(slash + 1));
        at[*sym] = make_rat(num, den);
    }
    for (Sym s : {Sym::a, Sym::b, Sym::c})
        if (!at.count(s)) throw Error("--specialize must set a, b and c");
    return at;
}

struct Mode {
    bool cycles = true;
    bool identities = true;
    bool decomps = true;
    bool relations = true;
};

int run(const std::vector<std::string>& paths, const std::string& only_cycle,
        const std::string& format, const std::string& out_path, RunOptions opt, Mode mode) {
    auto inputs = load_inputs(paths);
    dsl::SourceFile sf = dsl::parse_files(inputs);
    dsl::Catalog cat = dsl::elaborate(sf);

    HypothesisSet H;
    if (!sf.hypotheses || sf.hypotheses->from_relation) {
        H = nondegeneracy_hypotheses();
    } else {
        for (const auto& e : sf.hypotheses->explicit_polys) {
            RatFunc f = cat.eval(*e);
            if (!f.is_polynomial() || f.depends_on(Sym::x) || f.depends_on(Sym::y))
                throw Error("explicit hypotheses must be polynomials in a, b, c");
            H.add(f.num(), "explicit catalog hypothesis");
        }
    }
    if (opt.specialize && !H.satisfied_by(*opt.specialize))
        throw Error("the requested specialization violates the hypothesis ledger");

    // Filter the source down to the requested entries.
    dsl::SourceFile filtered;
    filtered.notes = sf.notes;
    if (mode.cycles) {
        for (auto& c : sf.cycle_checks)
            if (only_cycle.empty() || c.cycle == only_cycle)
                filtered.cycle_checks.push_back(std::move(c));
        if (!only_cycle.empty() && filtered.cycle_checks.empty())
            throw Error("no check for cycle '" + only_cycle + "' in the catalog");
    }
    if (mode.identities && only_cycle.empty())
        filtered.identity_checks = std::move(sf.identity_checks);
    if (mode.decomps && only_cycle.empty())
        filtered.decomp_checks = std::move(sf.decomp_checks);
    if (mode.relations && only_cycle.empty())
        filtered.relation_checks = std::move(sf.relation_checks);

    dsl::Catalog run_cat = std::move(cat);
    run_cat.source = &filtered;

    CertStore store;
    CatalogReport report = run_catalog(run_cat, H, opt, store);

    ReportMeta meta{opt.check.seed, opt.check.trials, opt.check.strict};
    std::string rendered = format == "json" ? render_json(report, store, H, meta)
                                            : render_text(report, store, H, meta);
    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write " + out_path);
        out << rendered;
    }
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubecert: admissibility certificates for parametrized cubical cycles"};
    app.require_subcommand(1);

    std::vector<std::string> paths;
    std::string only_cycle, format = "text", out_path, specialize;
    RunOptions opt;
    long seed = 1, trials = 64, jobs = 1;
    bool strict = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("paths", paths, "catalog files or directories")->required();
        cmd->add_option("--report", format, "report format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", out_path, "write the report to this file");
        cmd->add_option("--seed", seed, "base seed for sampling")->check(CLI::PositiveNumber);
        cmd->add_option("--trials", trials, "samples per probabilistic discharge")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_flag("--strict", strict,
                      "require every obligation to factor over the ledger");
        cmd->add_option("--specialize", specialize,
                        "explicit a=..,b=..,c=.. for the numeric oracle");
    };

    CLI::App* verify = app.add_subcommand("verify", "run every catalog check");
    add_common(verify);
    verify->add_option("--cycle", only_cycle, "verify a single cycle");
    CLI::App* identities = app.add_subcommand("identities", "run only identity checks");
    add_common(identities);
    CLI::App* relations = app.add_subcommand("relations", "run only relation checks");
    add_common(relations);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opt.check.seed = static_cast<std::uint64_t>(seed);
    opt.check.trials = static_cast<int>(trials);
    opt.check.strict = strict;
    opt.jobs = static_cast<int>(jobs);

    Mode mode;
    if (identities->parsed()) mode = {false, true, false, false};
    if (relations->parsed()) mode = {false, false, false, true};

    try {
        if (!specialize.empty()) opt.specialize = parse_specialize(specialize);
        return run(paths, only_cycle, format, out_path, opt, mode);
    } catch (const Error& e) {
        std::cerr << "cubecert: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "cubecert: " << e.what() << "\n";
        return 2;
    }
}
