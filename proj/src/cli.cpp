#include "hkit/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hkit/oracle.hpp"

namespace hkit::cli {

namespace {

double real_of(const json& v, const char* what) {
    if (!v.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
    return x;
}

cplx entry_from_json(const json& v) {
    if (v.is_number()) return {real_of(v, "matrix entry"), 0.0};
    if (v.is_array() && v.size() == 2) return {real_of(v[0], "real part"), real_of(v[1], "imaginary part")};
    throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

Interval interval_from_json(const json& j) {
    return Interval(real_of(field(j, "alpha"), "alpha"), real_of(field(j, "beta"), "beta"));
}

json check_to_json(const Check& c) {
    return {{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"passed", c.passed}};
}

std::vector<Check> residual_checks(const std::vector<Residual>& rs, const Tolerance& tol) {
    std::vector<Check> out;
    for (const Residual& r : rs) out.push_back(Check{r.name, r.value, tol.eq_rel_tol, r.ok(tol.eq_rel_tol)});
    return out;
}

Check sequence_agreement(const std::string& name, const MatrixSequence& x, const MatrixSequence& y,
                         const Tolerance& tol) {
    double w = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) w = std::max(w, rel_diff(x[j], y[j], tol.eq_rel_tol));
    return Check{name, w, tol.eq_rel_tol, w <= tol.eq_rel_tol};
}

void append(std::vector<Check>& to, const std::vector<Check>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::vector<Check> reciprocal_suite(const MomentSequence& ms, const Tolerance& tol) {
    const MatrixSequence r = reciprocal(ms.seq, tol);
    std::vector<Check> out{sequence_agreement("reciprocal_vs_dual", r, reciprocal_dual(ms.seq, tol), tol)};
    if (ms.kappa() <= kClosedFormMaxKappa)
        out.push_back(sequence_agreement("reciprocal_vs_closed", r, reciprocal_closed(ms.seq, tol), tol));
    return out;
}

std::vector<Check> hankel_identity_suite(const MomentSequence& ms, const Tolerance& tol) {
    const MatrixSequence& s = ms.seq;
    const int kappa = ms.kappa();
    std::vector<Residual> rs;
    auto tagged = [](Residual r, const char* var, int n) {
        r.name += std::string("[") + var + "=" + std::to_string(n) + "]";
        return r;
    };
    for (int n = 0; 2 * n + 1 <= kappa; ++n) {
        rs.push_back(tagged(check_hankel_reciprocal(s, n, tol), "n", n));
        rs.push_back(tagged(check_k_reciprocal(s, n, tol), "n", n));
    }
    for (int n = 0; 2 * n + 2 <= kappa; ++n) rs.push_back(tagged(check_g_reciprocal(s, n, tol), "n", n));
    for (int m = 0; m <= kappa; ++m) rs.push_back(tagged(check_toeplitz_reflexive(s, m, tol), "m", m));
    for (int n = 1; 2 * n <= kappa; ++n) rs.push_back(tagged(check_hankel_ldu(s, n, tol), "n", n));
    return residual_checks(rs, tol);
}

std::vector<Check> toeplitz_suite(const MomentSequence& ms, const Tolerance& tol) {
    if (!is_first_term_dominated(ms.seq, tol))
        throw precondition_error("toeplitz-pinv: sequence is not first-term dominated");
    std::vector<Residual> rs;
    for (int m = 0; m <= ms.kappa(); ++m) {
        Residual r = check_toeplitz_pinv(ms.seq, m, tol);
        r.name += "[m=" + std::to_string(m) + "]";
        rs.push_back(r);
        r = check_toeplitz_range(ms.seq, m, tol);
        r.name += "[m=" + std::to_string(m) + "]";
        rs.push_back(r);
    }
    return residual_checks(rs, tol);
}

std::vector<Check> shift_suite(const MomentSequence& ms, const Tolerance& tol) {
    if (!in_Fgg(ms, tol)) throw precondition_error("shift: sequence is not in Fgg");
    const TransformTrace tr = f_transform_iter(ms, ms.kappa(), tol);
    std::vector<Check> out = tr.identity_residuals;
    for (int k = 0; k <= ms.kappa(); ++k) append(out, shift_theorem_check(tr, k, tol));
    return out;
}

std::vector<Check> parallel_sum_suite(const MomentSequence& ms, const Tolerance& tol) {
    if (!in_Fgg(ms, tol)) throw precondition_error("parallel-sum: sequence is not in Fgg");
    const IntervalParams p = interval_params(ms, tol);
    std::vector<Check> out;
    for (int k = 1; k <= ms.kappa(); ++k) {
        const Matrix rhs = ms.interval.delta() * parallel_sum(p.f[2 * k - 1], p.f[2 * k], tol);
        const double r = rel_diff(p.d[k], rhs, tol.eq_rel_tol);
        out.push_back(Check{"distance_parallel_sum[k=" + std::to_string(k) + "]", r, tol.eq_rel_tol,
                            r <= tol.eq_rel_tol});
    }
    return out;
}

std::vector<Check> extension_suite(const MomentSequence& ms, const Tolerance& tol) {
    const ExtensionInterval ext = extension_interval(ms, tol);
    auto member = [&](const std::string& name, const Matrix& x, bool expected) {
        std::vector<Matrix> items = ms.seq.items();
        items.push_back(x);
        const bool in = in_Fgg(MomentSequence{ms.interval, MatrixSequence(std::move(items))}, tol);
        return Check{name, in == expected ? 0.0 : 1.0, 0.0, in == expected};
    };
    const int q = ms.q();
    return {member("append_lower", ext.lower, true), member("append_upper", ext.upper, true),
            member("append_midpoint", (ext.lower + ext.upper) * 0.5, true),
            member("append_beyond_upper", ext.upper + 0.01 * norm(ext.upper) * eye(q), false)};
}

std::string read_all(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

json error_json(const char* kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

struct Options {
    std::string file;
    int steps = 1;
    int kappa = 4;
    std::string suite = "ft-representations";
    std::uint64_t seed = 0;
    bool seed_given = false;
    Tolerance tol;
};

// A random molecular fixture for `verify --seed S` without an input file.
MomentSequence seeded_fixture(std::uint64_t seed, int kappa) {
    const int q = 1 + static_cast<int>(seed % 3);
    MolecularOptions opt;
    opt.stratified = true;
    return moments(random_molecular(q, kappa + 2, desk_interval(kappa, seed), seed, opt), kappa);
}

int dispatch(const std::string& cmd, const Options& o, std::istream& in, std::ostream& out) {
    const Tolerance& tol = o.tol;
    if (cmd == "moments") {
        const MolecularMeasure mu = measure_from_json(parse_document(read_all(o.file, in)));
        if (o.kappa < 0) throw std::invalid_argument("--kappa must be nonnegative");
        out << sequence_to_json(moments(mu, o.kappa)).dump(2) << "\n";
        return kOk;
    }

    MomentSequence ms;
    json fixture;
    if (cmd == "verify" && o.file.empty()) {
        if (!o.seed_given) throw std::invalid_argument("verify needs an input FILE or --seed");
        if (o.kappa < 1 || o.kappa > 10) throw std::invalid_argument("--kappa must lie in [1, 10] for seeded fixtures");
        ms = seeded_fixture(o.seed, o.kappa);
        fixture = sequence_to_json(ms);
    } else {
        ms = sequence_from_json(parse_document(read_all(o.file, in)));
    }

    if (cmd == "classify") {
        out << report_to_json(classify(ms, tol)).dump(2) << "\n";
        return kOk;
    }
    if (cmd == "params") {
        out << params_to_json(interval_params(ms, tol)).dump(2) << "\n";
        return kOk;
    }
    if (cmd == "extend") {
        const ExtensionInterval ext = extension_interval(ms, tol);
        out << json{{"u", matrix_to_json(ext.lower)}, {"o", matrix_to_json(ext.upper)}}.dump(2) << "\n";
        return kOk;
    }
    if (cmd == "transform") {
        if (o.steps < 0 || o.steps > ms.kappa()) throw std::invalid_argument("--steps must lie in [0, kappa]");
        if (!in_Fgg(ms, tol)) throw precondition_error("transform: sequence is not in Fgg");
        const TransformTrace tr = f_transform_iter(ms, o.steps, tol);
        json stages = json::array(), params = json::array();
        for (const MomentSequence& st : tr.stages) stages.push_back(sequence_to_json(st));
        for (const IntervalParams& p : tr.params_per_stage) params.push_back(params_to_json(p));
        out << json{{"stages", stages}, {"params", params}, {"checks", checks_to_json(tr.identity_residuals)}}.dump(2)
            << "\n";
        return all_passed(tr.identity_residuals) ? kOk : kVerificationFailed;
    }
    if (cmd == "verify") {
        const std::vector<Check> checks = run_suite(o.suite, ms, tol);
        json doc{{"suite", o.suite}, {"passed", all_passed(checks)}, {"checks", checks_to_json(checks)}};
        if (!fixture.is_null()) doc["fixture"] = fixture, doc["seed"] = o.seed;
        out << doc.dump(2) << "\n";
        return all_passed(checks) ? kOk : kVerificationFailed;
    }
    throw std::invalid_argument("unknown command '" + cmd + "'");
}

}  // namespace

json matrix_to_json(const Matrix& A) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < A.cols(); ++k) row.push_back({A(i, k).real(), A(i, k).imag()});
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("a matrix must be a nonempty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw std::invalid_argument("matrix rows must be nonempty arrays");
    Matrix A(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("matrix rows have unequal lengths");
        for (std::size_t k = 0; k < cols; ++k) A(i, k) = entry_from_json(j[i][k]);
    }
    return A;
}

json sequence_to_json(const MomentSequence& ms) {
    json mats = json::array();
    for (const Matrix& m : ms.seq.items()) mats.push_back(matrix_to_json(m));
    return {{"alpha", ms.interval.alpha}, {"beta", ms.interval.beta}, {"q", ms.q()}, {"matrices", mats}};
}

MomentSequence sequence_from_json(const json& j) {
    const Interval I = interval_from_json(j);
    const int q = int_field(j, "q");
    if (q < 1) throw std::invalid_argument("q must be positive");
    const json& mats = field(j, "matrices");
    if (!mats.is_array() || mats.empty()) throw std::invalid_argument("'matrices' must be a nonempty array");
    std::vector<Matrix> items;
    for (const json& m : mats) {
        Matrix A = matrix_from_json(m);
        if (A.rows() != q || A.cols() != q) throw std::invalid_argument("every matrix must be q x q");
        items.push_back(std::move(A));
    }
    if (j.contains("metadata") && !j.at("metadata").is_object())
        throw std::invalid_argument("'metadata' must be an object");
    return MomentSequence{I, MatrixSequence(std::move(items))};
}

json measure_to_json(const MolecularMeasure& mu) {
    json atoms = json::array();
    for (const Atom& a : mu.atoms) atoms.push_back({{"node", a.node}, {"weight", matrix_to_json(a.weight)}});
    return {{"alpha", mu.interval.alpha}, {"beta", mu.interval.beta}, {"q", mu.q}, {"atoms", atoms}};
}

MolecularMeasure measure_from_json(const json& j) {
    MolecularMeasure mu;
    mu.interval = interval_from_json(j);
    mu.q = int_field(j, "q");
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) throw std::invalid_argument("'atoms' must be an array");
    for (const json& a : atoms) mu.atoms.push_back(Atom{real_of(field(a, "node"), "node"), matrix_from_json(field(a, "weight"))});
    mu.validate();
    return mu;
}

json report_to_json(const ClassReport& rep) {
    json w = json::object();
    for (const auto& [cls, list] : rep.witnesses) {
        json arr = json::array();
        for (const Witness& x : list)
            arr.push_back({{"matrix", x.matrix},
                           {"min_eig", x.min_eig},
                           {"rel_slack", x.rel_slack},
                           {"hermitian", x.hermitian},
                           {"psd", x.psd},
                           {"borderline", x.borderline}});
        w[cls] = arr;
    }
    return {{"in_Hgg", rep.in_Hgg}, {"in_Kgg", rep.in_Kgg}, {"in_Lgg", rep.in_Lgg},
            {"in_Fgg", rep.in_Fgg}, {"in_Fg", rep.in_Fg},   {"witnesses", w}};
}

json params_to_json(const IntervalParams& p) {
    auto seq = [](const MatrixSequence& s) {
        json a = json::array();
        for (const Matrix& m : s.items()) a.push_back(matrix_to_json(m));
        return a;
    };
    json doc{{"u", seq(p.u)}, {"o", seq(p.o)}, {"m", seq(p.m)}, {"d", seq(p.d)}, {"A", seq(p.A)},
             {"B", seq(p.B)}, {"f", seq(p.f)}, {"e", seq(p.e)}, {"e_reliable", p.e_reliable}};
    doc["degenerate_tail_from"] = p.degenerate_tail_from ? json(*p.degenerate_tail_from) : json(nullptr);
    return doc;
}

json checks_to_json(const std::vector<Check>& checks) {
    json a = json::array();
    for (const Check& c : checks) a.push_back(check_to_json(c));
    return a;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"reciprocal", "hankel-identities", "toeplitz-pinv",
                                                   "ft-representations", "ldu", "shift", "parallel-sum",
                                                   "extension", "all"};
    return names;
}

std::vector<Check> run_suite(const std::string& suite, const MomentSequence& ms, const Tolerance& tol) {
    if (suite == "reciprocal") return reciprocal_suite(ms, tol);
    if (suite == "hankel-identities") return hankel_identity_suite(ms, tol);
    if (suite == "toeplitz-pinv") return toeplitz_suite(ms, tol);
    if (suite == "ft-representations") return verify_ft_representations(ms, tol);
    if (suite == "ldu") return verify_ldu_reductions(ms, tol);
    if (suite == "shift") return shift_suite(ms, tol);
    if (suite == "parallel-sum") return parallel_sum_suite(ms, tol);
    if (suite == "extension") return extension_suite(ms, tol);
    if (suite == "all") {
        std::vector<Check> out = reciprocal_suite(ms, tol);
        append(out, hankel_identity_suite(ms, tol));
        append(out, verify_ft_representations(ms, tol));
        append(out, verify_ldu_reductions(ms, tol));
        append(out, shift_suite(ms, tol));
        append(out, parallel_sum_suite(ms, tol));
        append(out, extension_suite(ms, tol));
        return out;
    }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matricial Hausdorff moment toolkit", "hkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool file_required) {
        sub->add_option("--rank-tol", o.tol.rank_rel_tol, "relative singular-value cutoff");
        sub->add_option("--psd-tol", o.tol.psd_tol, "relative PSD eigenvalue floor");
        sub->add_option("--eq-tol", o.tol.eq_rel_tol, "relative equality tolerance");
        auto* f = sub->add_option("FILE", o.file, "input JSON document, '-' for stdin");
        if (file_required) f->required();
    };
    add_common(app.add_subcommand("classify", "class membership report"), true);
    add_common(app.add_subcommand("params", "interval parameters and canonical moments"), true);
    add_common(app.add_subcommand("extend", "endpoints of the one-step extension interval"), true);
    CLI::App* transform = app.add_subcommand("transform", "iterated F-transform");
    add_common(transform, true);
    transform->add_option("--steps", o.steps, "number of transform steps");
    CLI::App* verify = app.add_subcommand("verify", "identity verification suites");
    add_common(verify, false);
    verify->add_option("--suite", o.suite, "suite name")->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", o.seed, "seed for a random molecular fixture when FILE is omitted")
        ->each([&](const std::string&) { o.seed_given = true; });
    verify->add_option("--kappa", o.kappa, "length of the seeded fixture");
    CLI::App* mom = app.add_subcommand("moments", "moments of a molecular measure");
    add_common(mom, true);
    mom->add_option("--kappa", o.kappa, "largest moment index");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "hkit: " << e.what() << "\n";
        out << error_json("usage", e.what()).dump(2) << "\n";
        return kInputError;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        o.tol.validate();
        return dispatch(cmd, o, in, out);
    } catch (const precondition_error& e) {
        err << "hkit: " << e.what() << "\n";
        out << error_json("precondition", e.what()).dump(2) << "\n";
        return kPreconditionFailed;
    } catch (const numerical_error& e) {
        err << "hkit: " << e.what() << "\n";
        out << error_json("numerical", e.what()).dump(2) << "\n";
        return kVerificationFailed;
    } catch (const std::exception& e) {
        err << "hkit: " << e.what() << "\n";
        out << error_json("input", e.what()).dump(2) << "\n";
        return kInputError;
    }
}

}  // namespace hkit::cli
