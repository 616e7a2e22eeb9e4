#include <array>
#include <chrono>
#include <climits>
#include <filesystem>
#include <iostream>
#include <iomanip>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclo2/approx.hpp"
#include "cyclo2/presentation.hpp"

using namespace cyclo2;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string input;
    std::string command = "compute";
    std::string theory = "hcminus";
    int max_internal = 6;
    int max_homological = 6;
    int columns = -1;
    std::string format = "table";
    uint64_t seed = 1;
    int samples = 100;
    std::string alpha = "-inf";
    int beta = 0;
    int page = 2;
    bool timing = false;
};

const std::vector<std::string> kTheories = {"hh", "hc", "hcminus", "hcper", "ell", "ellplus", "ellper", "derham"};

std::optional<Theory> tower_theory(const std::string& t)
{
    if (t == "hh")
        return Theory::hh;
    if (t == "hc")
        return Theory::plus;
    if (t == "hcminus")
        return Theory::minus;
    if (t == "hcper")
        return Theory::per;
    return std::nullopt;
}

std::optional<Flavor> ell_flavor(const std::string& t)
{
    if (t == "ell")
        return Flavor::ell;
    if (t == "ellplus")
        return Flavor::ell_plus;
    if (t == "ellper")
        return Flavor::ell_per;
    return std::nullopt;
}

/* n range shown for a theory */
std::pair<int, int> degree_range(const std::string& t, int N)
{
    if (t == "hh" || t == "hc" || t == "derham" || t == "ellplus")
        return {0, N};
    return {-N, N};
}

struct Entry {
    int n = 0;
    Grade grade;
    int weight = 0;
    std::size_t dim = 0;
    bool stable = true;
    int window = -1;
};

ordered_json grade_json(const Grade& g)
{
    ordered_json a = ordered_json::array();
    for (int v : g)
        a.push_back(v);
    return a;
}

struct Session {
    const RunConfig& cfg;
    Algebra A;
    Hochschild H;
    DeRham R;
    Ell L;
    Approx P;

    explicit Session(const RunConfig& c)
        : cfg(c), A(load_presentation(c.input)), H(A), R(A), L(A, R), P(H, L)
    {
        A.prepare(std::max(0, c.max_internal) + 4);
    }

    int window(int n, int d) const { return cfg.columns >= 0 ? cfg.columns : tower_window(n, d); }

    std::vector<Entry> entries(const std::string& theory) const
    {
        auto [lo, hi] = degree_range(theory, cfg.max_homological);
        struct Job {
            int n, d;
            Grade g;
        };
        std::vector<Job> jobs;
        for (int d = 0; d <= cfg.max_internal; ++d)
            for (const auto& g : A.grades_of_weight(d))
                for (int n = lo; n <= hi; ++n)
                    jobs.push_back({n, d, g});
        std::vector<Entry> out(jobs.size());
        Homology hom(H);
        parallel_for(jobs.size(), [&](std::size_t i) {
            const Job& j = jobs[i];
            Entry e;
            e.n = j.n;
            e.grade = j.g;
            e.weight = j.d;
            if (auto t = tower_theory(theory)) {
                e.window = window(j.n, j.d);
                auto hp = hom.homology(*t, j.n, j.g, e.window);
                e.dim = hp.dim();
                e.stable = hp.stable;
            }
            else if (auto f = ell_flavor(theory)) {
                auto sp = L.space(*f, j.n, j.g);
                e.dim = sp->dim();
                e.stable = sp->stable();
            }
            else
                e.dim = j.n < 0 ? 0 : R.cohomology(j.n, j.g).dim();
            out[i] = e;
        });
        return out;
    }
};

ordered_json algebra_json(const Session& s)
{
    const Algebra& A = s.A;
    ordered_json gens = ordered_json::array();
    for (const auto& g : A.presentation().generators)
        gens.push_back({{"name", g.name}, {"degree", g.degree}});
    const char* split = A.split_mode() == SplitMode::multidegree ? "multidegree"
                        : A.split_mode() == SplitMode::weight    ? "weight"
                                                                 : "trivial";
    return {{"id", std::filesystem::path(s.cfg.input).stem().string()},
            {"generators", gens},
            {"relations", A.presentation().relations.size()},
            {"graded", A.graded()},
            {"split", split}};
}

ordered_json config_json(const RunConfig& c)
{
    ordered_json j = {{"command", c.command},
                      {"theory", c.theory},
                      {"max_internal", c.max_internal},
                      {"max_homological", c.max_homological},
                      {"columns", c.columns},
                      {"seed", c.seed}};
    if (c.command == "spectral") {
        j["alpha"] = c.alpha;
        j["beta"] = c.beta;
        j["page"] = c.page;
    }
    return j;
}

ordered_json entries_json(const std::vector<Entry>& es)
{
    ordered_json a = ordered_json::array();
    for (const auto& e : es) {
        ordered_json j = {{"n", e.n}, {"grade", grade_json(e.grade)}, {"weight", e.weight}, {"dim", e.dim},
                          {"stable", e.stable}};
        if (e.window >= 0)
            j["window"] = e.window;
        a.push_back(j);
    }
    return a;
}

/* n down the side, internal weight across; '*' marks an unstable entry */
void print_grid(std::ostream& os, const std::string& title, const std::vector<Entry>& es, int max_d)
{
    std::map<int, std::vector<std::pair<std::size_t, bool>>> rows;
    for (const auto& e : es) {
        auto& row = rows[e.n];
        row.resize(std::size_t(max_d + 1), {0, true});
        row[std::size_t(e.weight)].first += e.dim;
        row[std::size_t(e.weight)].second = row[std::size_t(e.weight)].second && e.stable;
    }
    os << title << "\n     n |";
    for (int d = 0; d <= max_d; ++d)
        os << std::setw(5) << d;
    os << "\n";
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        os << std::setw(6) << it->first << " |";
        for (const auto& [dim, stable] : it->second)
            os << std::setw(4) << dim << (stable ? ' ' : '*');
        os << "\n";
    }
}

int run_compute(const Session& s, ordered_json& out)
{
    const auto& c = s.cfg;
    std::vector<std::string> theories;
    if (c.command == "tables")
        theories = c.theory == "all" ? kTheories : std::vector<std::string>{c.theory};
    else
        theories = {c.theory};
    ordered_json tables = ordered_json::object();
    for (const auto& t : theories) {
        auto es = s.entries(t);
        if (c.format == "table")
            print_grid(std::cout, t, es, c.max_internal);
        tables[t] = entries_json(es);
    }
    if (c.command == "tables")
        out["tables"] = tables;
    else
        out["entries"] = tables[c.theory];
    return 0;
}

int run_spectral(const Session& s, ordered_json& out)
{
    const auto& c = s.cfg;
    const int alpha = c.alpha == "-inf" ? INT_MIN : std::stoi(c.alpha);
    const int N = c.max_homological;
    ordered_json es = ordered_json::array();
    struct Job {
        int s, t, d;
        Grade g;
    };
    std::vector<Job> jobs;
    for (int d = 0; d <= c.max_internal; ++d)
        for (const auto& g : s.A.grades_of_weight(d))
            for (int col = std::max(alpha == INT_MIN ? -N : alpha, -N); col <= c.beta; ++col)
                for (int t = -N; t <= N; ++t)
                    if (t - col >= 0 && t - col <= N)
                        jobs.push_back({col, t, d, g});
    std::vector<std::size_t> dims(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const Job& j = jobs[i];
        dims[i] = (c.page == 1 ? e1_page(s.H, alpha, c.beta, j.s, j.t, j.g) : e2_page(s.H, alpha, c.beta, j.s, j.t, j.g)).dim;
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        es.push_back({{"s", j.s}, {"t", j.t}, {"grade", grade_json(j.g)}, {"weight", j.d}, {"dim", dims[i]}});
        if (c.format == "table" && dims[i])
            std::cout << "E" << c.page << "[s=" << j.s << ", t=" << j.t << ", d=" << j.d << "] = " << dims[i] << "\n";
    }
    out["entries"] = es;
    return 0;
}

int run_verify(const Session& s, ordered_json& out)
{
    const auto& c = s.cfg;
    auto t = tower_theory(c.theory);
    if (!t || *t == Theory::hh)
        throw CLI::ValidationError("--theory", "verify-approx needs hcminus, hc or hcper");
    ApproxOptions opt;
    opt.min_n = *t == Theory::plus ? 0 : -c.max_homological;
    opt.max_n = c.max_homological;
    opt.max_d = c.max_internal;
    opt.window = c.columns;
    opt.seed = c.seed;
    opt.samples = c.samples;
    ApproxReport rep = verify_approximation(s.P, *t, opt);

    ordered_json recs = ordered_json::array();
    for (const auto& r : rep.records)
        recs.push_back({{"n", r.n},
                        {"grade", grade_json(r.grade)},
                        {"weight", s.A.grade_weight(r.grade)},
                        {"window", r.window},
                        {"dim_source", r.dim_source},
                        {"dim_target", r.dim_target},
                        {"rank", r.rank},
                        {"verdict", r.iso ? "iso" : "non-iso"},
                        {"truncated", r.truncated},
                        {"relation_rows", r.relation_rows},
                        {"relation_failures", r.relation_failures}});
    std::map<std::string, std::array<std::size_t, 2>> sq;
    ordered_json offenders = ordered_json::array();
    for (const auto& q : rep.squares) {
        sq[q.square][0] += q.checked;
        sq[q.square][1] += q.residual;
        if (q.residual)
            offenders.push_back({{"square", q.square}, {"n", q.n}, {"grade", grade_json(q.grade)},
                                 {"residual", q.residual}, {"input", q.offender}});
    }
    ordered_json squares = ordered_json::array();
    for (const auto& [name, v] : sq)
        squares.push_back({{"square", name}, {"checked", v[0]}, {"residual", v[1]}});
    auto pairs = [&](const std::vector<const ApproxRecord*>& rs) {
        ordered_json a = ordered_json::array();
        for (const auto* r : rs)
            a.push_back({{"n", r->n}, {"grade", grade_json(r->grade)}});
        return a;
    };
    out["theory"] = theory_name(*t);
    out["records"] = recs;
    out["squares"] = squares;
    out["square_offenders"] = offenders;
    out["products"] = {{"samples", rep.product_samples}, {"failures", rep.product_failures}};
    out["summary"] = {{"all_iso", rep.all_iso()},
                      {"consistent", rep.consistent()},
                      {"non_iso", pairs(rep.non_iso())},
                      {"truncated", pairs(rep.truncated())}};

    if (c.format == "table") {
        std::vector<Entry> es;
        for (const auto& r : rep.records)
            es.push_back({r.n, r.grade, s.A.grade_weight(r.grade), r.iso ? 0u : 1u, !r.truncated, r.window});
        print_grid(std::cout, std::string("non-iso bidegrees of psi into ") + theory_name(*t), es, c.max_internal);
        for (const auto& [name, v] : sq)
            std::cout << "square " << name << ": " << v[0] << " checked, residual " << v[1] << "\n";
        std::cout << "products: " << rep.product_samples << " sampled, " << rep.product_failures << " failed\n";
        std::cout << "verdict: " << (rep.all_iso() ? "iso" : "non-iso") << ", "
                  << (rep.consistent() ? "consistent" : "INCONSISTENT") << "\n";
    }
    return rep.consistent() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"cyclic homology over F2 and its approximations"};
    app.add_option("--input", cfg.input, "algebra presentation file")->required()->check(CLI::ExistingFile);
    app.add_option("--command", cfg.command)->check(CLI::IsMember({"compute", "verify-approx", "spectral", "tables"}));
    std::vector<std::string> theories = kTheories;
    theories.push_back("all");
    app.add_option("--theory", cfg.theory)->check(CLI::IsMember(theories));
    app.add_option("--max-internal", cfg.max_internal)->check(CLI::NonNegativeNumber);
    app.add_option("--max-homological", cfg.max_homological)->check(CLI::NonNegativeNumber);
    app.add_option("--columns", cfg.columns, "tower window S; default picks one per bidegree")->check(CLI::NonNegativeNumber);
    app.add_option("--format", cfg.format)->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", cfg.seed);
    app.add_option("--samples", cfg.samples, "sampled product checks")->check(CLI::NonNegativeNumber);
    app.add_option("--alpha", cfg.alpha, "first column of the tower, or -inf");
    app.add_option("--beta", cfg.beta, "last column of the tower");
    app.add_option("--page", cfg.page)->check(CLI::IsMember({1, 2}));
    app.add_flag("--timing", cfg.timing, "add wall time to the JSON report");
    CLI11_PARSE(app, argc, argv);
    if (cfg.command == "tables" && !app.count("--theory"))
        cfg.theory = "all";
    if (cfg.alpha != "-inf" && (cfg.alpha.empty() || cfg.alpha.find_first_not_of("-0123456789") != std::string::npos)) {
        std::cerr << "error: --alpha takes an integer or -inf\n";
        return 2;
    }
    if (cfg.theory == "all" && cfg.command != "tables") {
        std::cerr << "error: --theory all only applies to tables\n";
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    ordered_json out = {{"schema", 1}};
    int status = 0;
    try {
        Session s(cfg);
        out["algebra"] = algebra_json(s);
        out["config"] = config_json(cfg);
        if (cfg.command == "verify-approx")
            status = run_verify(s, out);
        else if (cfg.command == "spectral")
            status = run_spectral(s, out);
        else
            status = run_compute(s, out);
    }
    catch (const PresentationError& e) {
        std::cerr << cfg.input << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return 2;
    }
    catch (const AlgebraError& e) {
        std::cerr << cfg.input << ": " << e.what() << "\n";
        return 2;
    }
    catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::logic_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    }
    if (cfg.timing)
        out["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.format == "json")
        std::cout << out.dump(2) << "\n";
    return status;
}
