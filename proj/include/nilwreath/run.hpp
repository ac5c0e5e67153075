#pragma once

#include <algorithm>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nilwreath/jsonio.hpp"
#include "nilwreath/quadratic.hpp"
#include "nilwreath/selfsim.hpp"

// Command dispatcher shared by the CLI binary and the tests: a request is
// (command, payload) and the response is an ordered JSON object with a fixed
// field order, so identical requests produce byte-identical output.

namespace nilwreath {

struct RunOptions {
    std::optional<long long> budget;  // overrides the command's primary cap
    int jobs = 1;                     // worker threads for scans
};

// -- candidate-set complexity -------------------------------------------------

struct ComplexityQuery {
    NilLieAlg alg;
    IntLattice lattice;            // seed for the certifying lattice search
    std::vector<QMat> candidates;  // automorphism matrices
    bool full_class = false;       // false: admissible = in_s; true: in_v
    size_t search_cap = 64;
};

struct CandidateReport {
    bool admissible = false;
    SpectralReport spectral;
    Int height;
    MinimalSearchReport search;  // meaningful only when admissible
};

struct ComplexityMinReport {
    std::vector<CandidateReport> rows;
    bool has_witness = false;
    size_t best_index = 0;
    Int best_height;
};

// Minimum height over the admissible candidates: an upper bound for the
// complexity of the commensurability class, exact when the candidate set is
// known to suffice.  Admissible candidates are certified independently by a
// minimal-lattice search from the seed.
inline ComplexityMinReport complexity_min(const ComplexityQuery& q, CancelToken token = {}) {
    if (q.candidates.empty()) throw DomainError("empty candidate set");
    if (q.lattice.n != q.alg.dim)
        throw DomainError("certification lattice dimension does not match the algebra");
    ComplexityMinReport rep;
    for (size_t k = 0; k < q.candidates.size(); ++k) {
        token.check();
        const QMat& f = q.candidates[k];
        try {
            detail::require_automorphism(q.alg, f);
        } catch (const DomainError& e) {
            throw DomainError("candidate " + std::to_string(k) + ": " + e.what());
        }
        CandidateReport row;
        row.spectral = spectral_class(q.alg, f);
        row.admissible = q.full_class ? row.spectral.in_v : row.spectral.in_s;
        row.height = height(f);
        if (row.admissible) {
            row.search = minimal_lattice_search(f, q.lattice, q.search_cap, token);
            if (!rep.has_witness || row.height < rep.best_height) {
                rep.has_witness = true;
                rep.best_height = row.height;
                rep.best_index = k;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

namespace rundetail {

using jsonio::need;
using jsonio::opt;
using jsonio::read_int;
using jsonio::read_long;
using jsonio::read_size;
using jsonio::write_int;

// Primary cap: --budget flag beats the payload's "cap", which beats the
// command default.
inline size_t primary_cap(const json& payload, const RunOptions& o, size_t dflt) {
    Int v(static_cast<long>(dflt));
    if (o.budget) {
        if (*o.budget <= 0) throw SchemaError("budget must be positive");
        v = Int(static_cast<long>(*o.budget));
    } else if (const json* c = opt(payload, "cap")) {
        v = read_int(*c, "cap");
        if (v <= 0) throw SchemaError("\"cap\" must be positive");
    }
    if (!v.fits_ulong_p()) throw SchemaError("cap out of range");
    return static_cast<size_t>(v.get_ui());
}

inline Int primary_cap_int(const json& payload, const RunOptions& o, long dflt) {
    if (o.budget) {
        if (*o.budget <= 0) throw SchemaError("budget must be positive");
        return Int(static_cast<long>(*o.budget));
    }
    if (const json* c = opt(payload, "cap")) {
        Int v = read_int(*c, "cap");
        if (v <= 0) throw SchemaError("\"cap\" must be positive");
        return v;
    }
    return Int(dflt);
}

// Secondary coset cap for commands whose primary budget is something else.
inline size_t coset_cap(const json& payload) {
    if (const json* c = opt(payload, "coset_cap")) {
        size_t v = read_size(*c, "coset_cap");
        if (v == 0) throw SchemaError("\"coset_cap\" must be positive");
        return v;
    }
    return 4096;
}

inline QMat square_matrix(const json& payload, const std::string& key) {
    QMat m = jsonio::read_qmat(need(payload, key, ""), key);
    if (!m.is_square()) throw DomainError("\"" + key + "\" must be square");
    return m;
}

inline IntLattice lattice_or_standard(const json& payload, const std::string& key, size_t n) {
    if (const json* l = opt(payload, key)) {
        IntLattice out = jsonio::read_lattice(*l, key);
        if (out.n != n) throw DomainError("\"" + key + "\" dimension mismatch");
        return out;
    }
    return standard_lattice(n);
}

inline VirtualEndo endo_from_payload(const json& payload, size_t cap) {
    MultLattice lat = jsonio::read_mult_lattice(payload, "");
    QMat f = square_matrix(payload, "f");
    if (f.rows() != lat.alg.dim) throw DomainError("\"f\" dimension does not match the algebra");
    return build_endo(lat, f, cap);
}

inline QVec element_of(const json& payload, size_t dim) {
    QVec x = jsonio::read_qvec(need(payload, "element", ""), "element");
    if (x.size() != dim) throw SchemaError("\"element\" must have length " + std::to_string(dim));
    return x;
}

// Diophantine-form witness for the fd family; the ideal route (d = 1, 3)
// is upgraded to a solution of 4n^2 = a^2 + d b^2 at n = F(d).
inline FdWitness dio_witness(const Int& d, const FdReport& rep) {
    if (d == 1 || d == 3) {
        std::optional<FdWitness> w = solution_at(d, rep.f);
        if (!w) throw InternalError("no primitive solution at the attained F(d)");
        return *w;
    }
    return rep.witness;
}

inline json write_fd_witness(const FdWitness& w) {
    json j;
    j["n"] = write_int(w.n);
    j["a"] = write_int(w.a);
    j["b"] = write_int(w.b);
    return j;
}

// -- command handlers ---------------------------------------------------------

inline json cmd_height(const json& payload, const RunOptions&) {
    QMat h = square_matrix(payload, "matrix");
    Int ht = height(h);
    json resp;
    resp["height"] = write_int(ht);
    resp["orbits"] = jsonio::write_orbits(orbit_data(h));
    return resp;
}

inline json cmd_cp_lattice(const json& payload, const RunOptions&) {
    QMat h = square_matrix(payload, "matrix");
    IntLattice l = lattice_or_standard(payload, "lattice", h.rows());
    Int cp = cp_lattice(h, l);
    Int ht = height(h);
    json resp;
    resp["complexity"] = write_int(cp);
    resp["height"] = write_int(ht);
    resp["minimal"] = (cp == ht);
    return resp;
}

inline json cmd_minimal_search(const json& payload, const RunOptions& o) {
    QMat h = square_matrix(payload, "matrix");
    IntLattice seed = lattice_or_standard(payload, "seed", h.rows());
    MinimalSearchReport rep = minimal_lattice_search(h, seed, primary_cap(payload, o, 64));
    json resp;
    resp["minimal"] = rep.minimal;
    resp["complexity"] = write_int(rep.complexity);
    resp["height"] = write_int(rep.height);
    resp["iterations_used"] = write_int(Int(static_cast<long>(rep.iterations)));
    resp["lattice"] = jsonio::write_lattice(rep.lattice);
    return resp;
}

inline json cmd_algebra_validate(const json& payload, const RunOptions&) {
    json resp;
    NilLieAlg alg;
    try {
        alg = jsonio::read_algebra(need(payload, "algebra", ""), "algebra");
    } catch (const DomainError& e) {
        resp["valid"] = false;
        resp["reason"] = e.what();
        return resp;
    }
    resp["valid"] = true;
    resp["dim"] = write_int(Int(static_cast<long>(alg.dim)));
    resp["class"] = write_int(Int(alg.info.nil_class));
    json dims = json::array();
    for (size_t d : alg.info.lcs_dims) dims.push_back(write_int(Int(static_cast<long>(d))));
    resp["lcs_dims"] = dims;
    resp["center_dim"] = write_int(Int(static_cast<long>(alg.info.center.size())));
    resp["filiform"] = alg.info.filiform;
    return resp;
}

inline json cmd_grading_check(const json& payload, const RunOptions&) {
    NilLieAlg alg = jsonio::read_algebra(need(payload, "algebra", ""), "algebra");
    Grading g = jsonio::read_grading(need(payload, "grading", ""), alg.dim, "grading");
    GradingCheck c = check_grading(alg, g);
    json resp;
    resp["valid"] = c.valid;
    resp["special"] = c.special;
    resp["very_special"] = c.very_special;
    resp["non_negative"] = c.non_negative;
    resp["positive"] = c.positive;
    resp["e"] = write_int(c.e);
    return resp;
}

inline json cmd_grading_from_aut(const json& payload, const RunOptions&) {
    NilLieAlg alg = jsonio::read_algebra(need(payload, "algebra", ""), "algebra");
    QMat f = square_matrix(payload, "f");
    bool nonneg = false;
    if (const json* m = opt(payload, "nonneg")) {
        if (!m->is_boolean()) throw SchemaError("\"nonneg\" must be a boolean");
        nonneg = m->get<bool>();
    }
    Grading g = nonneg ? nonneg_grading_from_f(alg, f) : grading_from_automorphism(alg, f);
    json resp;
    resp["grading"] = jsonio::write_grading(g);
    resp["e"] = write_int(e_invariant(alg, g));
    return resp;
}

inline json cmd_spectral_class(const json& payload, const RunOptions&) {
    NilLieAlg alg = jsonio::read_algebra(need(payload, "algebra", ""), "algebra");
    QMat f = square_matrix(payload, "f");
    SpectralReport r = spectral_class(alg, f);
    json resp = jsonio::write_spectral_flags(r);
    resp["center_orbits"] = jsonio::write_orbits(r.center_orbits);
    resp["full_orbits"] = jsonio::write_orbits(r.full_orbits);
    return resp;
}

inline json cmd_build_endo(const json& payload, const RunOptions& o) {
    VirtualEndo e = endo_from_payload(payload, primary_cap(payload, o, 4096));
    json resp;
    resp["index"] = write_int(e.index);
    resp["cross_checked"] = e.cross_checked;
    json tv = json::array();
    for (const QVec& t : e.transversal) tv.push_back(jsonio::write_qvec(t));
    resp["transversal"] = tv;
    return resp;
}

inline json cmd_certify(const json& payload, const RunOptions& o) {
    VirtualEndo e = endo_from_payload(payload, primary_cap(payload, o, 4096));
    CertifyReport c = certify_datum(e);
    json resp;
    resp["self_similar"] = c.self_similar;
    resp["free"] = c.free_action;
    resp["fractal"] = c.fractal;
    resp["spectral"] = jsonio::write_spectral_flags(c.spectral);
    return resp;
}

inline json cmd_goodness(const json& payload, const RunOptions& o) {
    size_t cap = primary_cap(payload, o, 4096);
    VirtualEndo e = endo_from_payload(payload, cap);
    size_t depth = read_size(need(payload, "depth", ""), "depth");
    GoodnessReport rep = goodness(e, depth, cap);
    json resp;
    json idx = json::array();
    for (const Int& i : rep.indices) idx.push_back(write_int(i));
    resp["indices"] = idx;
    resp["is_good"] = rep.is_good;
    return resp;
}

inline json cmd_act(const json& payload, const RunOptions&) {
    VirtualEndo e = endo_from_payload(payload, coset_cap(payload));
    QVec gamma = element_of(payload, e.lat.alg.dim);
    std::vector<size_t> word = jsonio::read_word(need(payload, "word", ""), "word");
    json resp;
    resp["word"] = jsonio::write_word(act(e, gamma, word));
    return resp;
}

inline json cmd_level_transitive(const json& payload, const RunOptions& o) {
    VirtualEndo e = endo_from_payload(payload, coset_cap(payload));
    size_t depth = read_size(need(payload, "depth", ""), "depth");
    if (depth == 0) throw DomainError("depth must be at least 1");
    size_t budget = primary_cap(payload, o, 100000);
    bool all = true;
    json levels = json::array();
    for (size_t d = 1; d <= depth; ++d) {
        TransitivityReport r = level_transitive(e, d, budget);
        all = all && r.transitive;
        json row;
        row["depth"] = write_int(Int(static_cast<long>(d)));
        row["transitive"] = r.transitive;
        row["orbit"] = write_int(r.orbit_size);
        row["full"] = write_int(r.full_size);
        levels.push_back(std::move(row));
    }
    json resp;
    resp["transitive"] = all;
    resp["levels"] = levels;
    return resp;
}

inline json cmd_fixed_point(const json& payload, const RunOptions& o) {
    VirtualEndo e = endo_from_payload(payload, coset_cap(payload));
    QVec gamma = element_of(payload, e.lat.alg.dim);
    size_t depth = read_size(need(payload, "depth", ""), "depth");
    json resp;
    resp["fixed"] = has_fixed_point(e, gamma, depth, primary_cap(payload, o, 1000000));
    return resp;
}

inline json cmd_fractal_build(const json& payload, const RunOptions& o) {
    MultLattice lat = jsonio::read_mult_lattice(payload, "");
    Grading g = jsonio::read_grading(need(payload, "grading", ""), lat.alg.dim, "grading");
    size_t d_cap = 64;
    if (const json* c = opt(payload, "d_cap")) {
        d_cap = read_size(*c, "d_cap");
        if (d_cap == 0) throw SchemaError("\"d_cap\" must be positive");
    }
    FractalReport fr = build_fractal_datum(lat, g, d_cap, primary_cap(payload, o, 4096));
    json resp;
    resp["d"] = write_int(Int(fr.d));
    resp["f"] = jsonio::write_qmat(fr.endo.f);
    resp["index"] = write_int(fr.endo.index);
    resp["cross_checked"] = fr.endo.cross_checked;
    json cert;
    cert["self_similar"] = fr.cert.self_similar;
    cert["free"] = fr.cert.free_action;
    cert["fractal"] = fr.cert.fractal;
    resp["certified"] = cert;
    return resp;
}

inline json cmd_fd(const json& payload, const RunOptions& o) {
    Int d = read_int(need(payload, "d", ""), "d");
    FdReport rep = fd(d, primary_cap_int(payload, o, 100000));
    json resp;
    resp["F"] = write_int(rep.f);
    resp["witness"] = write_fd_witness(dio_witness(d, rep));
    return resp;
}

inline json cmd_cp_class(const json& payload, const RunOptions& o) {
    Int d = read_int(need(payload, "d", ""), "d");
    long e = read_long(need(payload, "e", ""), "e");
    Int cap = primary_cap_int(payload, o, 100000);
    FdReport rep = fd(d, cap);
    Int value = complexity_class_value(d, e, cap);
    json resp;
    resp["d"] = write_int(d);
    resp["e"] = write_int(Int(e));
    resp["F"] = write_int(rep.f);
    resp["value"] = write_int(value);
    return resp;
}

inline json cmd_fd_scan(const json& payload, const RunOptions& o) {
    Int cap = primary_cap_int(payload, o, 100000);
    bool both = false;
    if (const json* b = opt(payload, "both")) {
        if (!b->is_boolean()) throw SchemaError("\"both\" must be a boolean");
        both = b->get<bool>();
    }
    std::vector<Int> ds;
    if (const json* list = opt(payload, "ds")) {
        if (!list->is_array() || list->empty())
            throw SchemaError("\"ds\" must be a nonempty array");
        for (size_t i = 0; i < list->size(); ++i)
            ds.push_back(read_int((*list)[i], "ds[" + std::to_string(i) + "]"));
    } else {
        Int d_max = read_int(need(payload, "d_max", ""), "d_max");
        for (Int d = 1; d <= d_max; d += 1)
            if (squarefree_part(d) == d) ds.push_back(d);
        if (ds.empty()) throw DomainError("no squarefree d in range");
    }

    struct Row {
        FdReport rep;
        FdWitness witness;
        bool bound_ok = false;
        Int f_ideals;
        bool agree = false;
    };
    std::vector<Row> rows(ds.size());
    std::vector<std::exception_ptr> errors(ds.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ds.size()) return;
            try {
                Row& r = rows[i];
                r.rep = fd(ds[i], cap);
                r.witness = dio_witness(ds[i], r.rep);
                r.bound_ok = fd_lower_bound_holds(ds[i], r.rep);
                if (both) {
                    r.f_ideals = fd_ideals(ds[i], cap).f;
                    r.agree = (r.f_ideals == r.rep.f);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int jobs = std::clamp(o.jobs, 1, 64);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // First failure in input order wins, independent of scheduling.
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    json out = json::array();
    for (size_t i = 0; i < ds.size(); ++i) {
        json row;
        row["d"] = write_int(ds[i]);
        row["F"] = write_int(rows[i].rep.f);
        row["witness"] = write_fd_witness(rows[i].witness);
        row["lower_bound_ok"] = rows[i].bound_ok;
        if (both) {
            row["F_ideals"] = write_int(rows[i].f_ideals);
            row["agree"] = rows[i].agree;
        }
        out.push_back(std::move(row));
    }
    json resp;
    resp["rows"] = std::move(out);
    return resp;
}

inline json cmd_complexity_min(const json& payload, const RunOptions& o) {
    ComplexityQuery q;
    q.alg = jsonio::read_algebra(need(payload, "algebra", ""), "algebra");
    q.lattice = lattice_or_standard(payload, "lattice", q.alg.dim);
    const json& cands = need(payload, "candidates", "");
    if (!cands.is_array() || cands.empty())
        throw SchemaError("\"candidates\" must be a nonempty array of matrices");
    for (size_t k = 0; k < cands.size(); ++k) {
        QMat f = jsonio::read_qmat(cands[k], "candidates[" + std::to_string(k) + "]");
        if (!f.is_square() || f.rows() != q.alg.dim)
            throw DomainError("candidate " + std::to_string(k) + " has the wrong shape");
        q.candidates.push_back(std::move(f));
    }
    if (const json* m = opt(payload, "mode")) {
        if (!m->is_string()) throw SchemaError("\"mode\" must be \"cp\" or \"fcp\"");
        std::string s = m->get<std::string>();
        if (s == "cp") q.full_class = false;
        else if (s == "fcp") q.full_class = true;
        else throw SchemaError("\"mode\" must be \"cp\" or \"fcp\"");
    }
    q.search_cap = primary_cap(payload, o, 64);
    ComplexityMinReport rep = complexity_min(q);

    json resp;
    resp["label"] = "upper bound over candidate set";
    resp["mode"] = q.full_class ? "fcp" : "cp";
    if (rep.has_witness) {
        resp["min_height"] = write_int(rep.best_height);
        resp["best_candidate"] = write_int(Int(static_cast<long>(rep.best_index)));
    } else {
        resp["no_witness"] = true;
        resp["message"] = "no witness in candidate set";
    }
    json rows = json::array();
    for (size_t k = 0; k < rep.rows.size(); ++k) {
        const CandidateReport& r = rep.rows[k];
        json row;
        row["index"] = write_int(Int(static_cast<long>(k)));
        row["admissible"] = r.admissible;
        row["in_s"] = r.spectral.in_s;
        row["in_v"] = r.spectral.in_v;
        row["height"] = write_int(r.height);
        if (r.admissible) {
            row["certified_complexity"] = write_int(r.search.complexity);
            row["certified_minimal"] = r.search.minimal;
            row["iterations_used"] = write_int(Int(static_cast<long>(r.search.iterations)));
        }
        rows.push_back(std::move(row));
    }
    resp["candidates"] = std::move(rows);
    return resp;
}

}  // namespace rundetail

// -- dispatch ------------------------------------------------------------------

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "height",        "cp-lattice",   "minimal-search", "algebra-validate",
        "grading-check", "grading-from-aut", "spectral-class", "build-endo",
        "certify",       "goodness",     "act",            "level-transitive",
        "fixed-point",   "fractal-build", "fd",            "cp-class",
        "fd-scan",       "complexity-min"};
    return names;
}

inline json run_command(const std::string& command, const json& payload,
                        const RunOptions& o = {}) {
    using namespace rundetail;
    if (command == "height") return cmd_height(payload, o);
    if (command == "cp-lattice") return cmd_cp_lattice(payload, o);
    if (command == "minimal-search") return cmd_minimal_search(payload, o);
    if (command == "algebra-validate") return cmd_algebra_validate(payload, o);
    if (command == "grading-check") return cmd_grading_check(payload, o);
    if (command == "grading-from-aut") return cmd_grading_from_aut(payload, o);
    if (command == "spectral-class") return cmd_spectral_class(payload, o);
    if (command == "build-endo") return cmd_build_endo(payload, o);
    if (command == "certify") return cmd_certify(payload, o);
    if (command == "goodness") return cmd_goodness(payload, o);
    if (command == "act") return cmd_act(payload, o);
    if (command == "level-transitive") return cmd_level_transitive(payload, o);
    if (command == "fixed-point") return cmd_fixed_point(payload, o);
    if (command == "fractal-build") return cmd_fractal_build(payload, o);
    if (command == "fd") return cmd_fd(payload, o);
    if (command == "cp-class") return cmd_cp_class(payload, o);
    if (command == "fd-scan") return cmd_fd_scan(payload, o);
    if (command == "complexity-min") return cmd_complexity_min(payload, o);
    throw SchemaError("unknown command \"" + command + "\"");
}

// Accepts either a full request {"command": ..., "payload": ...} (the command
// must match the invoked subcommand) or a bare payload object.
inline json extract_payload(const json& doc, const std::string& command) {
    if (doc.is_object() && doc.contains("command")) {
        const json& c = doc.at("command");
        if (!c.is_string()) throw SchemaError("\"command\" must be a string");
        if (c.get<std::string>() != command)
            throw SchemaError("request command \"" + c.get<std::string>() +
                              "\" does not match subcommand \"" + command + "\"");
        return jsonio::need(doc, "payload", "request");
    }
    return doc;
}

inline json run_request(const json& doc, const std::string& command, const RunOptions& o = {}) {
    return run_command(command, extract_payload(doc, command), o);
}

// -- table rendering -----------------------------------------------------------

namespace rundetail {

inline std::string bstr(bool b) { return b ? "true" : "false"; }

inline std::string grid(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::string out;
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) out += "  ";
            out += r[i];
            if (i + 1 < r.size()) out.append(width[i] - r[i].size(), ' ');
        }
        out += "\n";
    }
    return out;
}

inline std::string poly_cell(const json& coeffs) {
    std::vector<Int> c;
    for (const auto& s : coeffs) c.push_back(parse_int(s.get<std::string>()));
    return jsonio::poly_display(IntPoly(std::move(c)));
}

}  // namespace rundetail

// Plain-text view for the tabular commands; nullopt means the command has no
// table form and the caller should print JSON.
inline std::optional<std::string> render_table(const std::string& command, const json& payload,
                                               const json& resp) {
    using namespace rundetail;
    if (command == "fd") {
        std::string d = jsonio::write_int(jsonio::read_int(jsonio::need(payload, "d", ""), "d"));
        const json& w = resp.at("witness");
        return grid({{"d", "F", "n", "a", "b"},
                     {d, resp.at("F"), w.at("n"), w.at("a"), w.at("b")}});
    }
    if (command == "fd-scan") {
        bool both = !resp.at("rows").empty() && resp.at("rows")[0].contains("F_ideals");
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> head = {"d", "F", "n", "a", "b", "bound_ok"};
        if (both) {
            head.push_back("F_ideals");
            head.push_back("agree");
        }
        rows.push_back(head);
        for (const auto& r : resp.at("rows")) {
            const json& w = r.at("witness");
            std::vector<std::string> row = {r.at("d"), r.at("F"),     w.at("n"),
                                            w.at("a"), w.at("b"),     bstr(r.at("lower_bound_ok"))};
            if (both) {
                row.push_back(r.at("F_ideals"));
                row.push_back(bstr(r.at("agree")));
            }
            rows.push_back(std::move(row));
        }
        return grid(rows);
    }
    if (command == "cp-class") {
        return grid({{"d", "e", "F", "value"},
                     {resp.at("d"), resp.at("e"), resp.at("F"), resp.at("value")}});
    }
    if (command == "height") {
        std::vector<std::vector<std::string>> rows = {{"poly", "multiplicity", "d"}};
        for (const auto& o : resp.at("orbits"))
            rows.push_back({poly_cell(o.at("poly")), o.at("multiplicity"), o.at("d")});
        return grid(rows) + "height = " + resp.at("height").get<std::string>() + "\n";
    }
    if (command == "goodness") {
        std::vector<std::vector<std::string>> rows = {{"level", "index"}};
        const json& idx = resp.at("indices");
        for (size_t i = 0; i < idx.size(); ++i)
            rows.push_back({std::to_string(i), idx[i].get<std::string>()});
        return grid(rows) +
               (resp.at("is_good").get<bool>() ? std::string("good\n") : std::string("not good\n"));
    }
    if (command == "level-transitive") {
        std::vector<std::vector<std::string>> rows = {{"depth", "orbit", "full", "transitive"}};
        for (const auto& l : resp.at("levels"))
            rows.push_back({l.at("depth"), l.at("orbit"), l.at("full"), bstr(l.at("transitive"))});
        return grid(rows);
    }
    if (command == "complexity-min") {
        std::vector<std::vector<std::string>> rows = {{"candidate", "admissible", "in_s", "in_v",
                                                       "height", "certified_cp", "minimal"}};
        for (const auto& r : resp.at("candidates")) {
            bool adm = r.at("admissible").get<bool>();
            rows.push_back({r.at("index"), bstr(adm), bstr(r.at("in_s")), bstr(r.at("in_v")),
                            r.at("height"), adm ? r.at("certified_complexity").get<std::string>() : "-",
                            adm ? bstr(r.at("certified_minimal")) : "-"});
        }
        std::string tail;
        if (resp.contains("min_height")) {
            tail = "min height " + resp.at("min_height").get<std::string>() + " via candidate " +
                   resp.at("best_candidate").get<std::string>() + " (" +
                   resp.at("label").get<std::string>() + ")\n";
        } else {
            tail = resp.at("message").get<std::string>() + "\n";
        }
        return grid(rows) + tail;
    }
    return std::nullopt;
}

}  // namespace nilwreath
