#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "nilwreath/errors.hpp"
#include "nilwreath/grading.hpp"
#include "nilwreath/heights.hpp"
#include "nilwreath/lattice.hpp"
#include "nilwreath/lie.hpp"
#include "nilwreath/malcev.hpp"
#include "nilwreath/matrix.hpp"
#include "nilwreath/numeric.hpp"

// JSON conventions: rationals and unbounded integers travel as decimal
// strings ("p" or "p/q"); matrices are row-major arrays of such strings;
// vectors are flat arrays; bracket tables use 1-based generator indices.
// Field order of emitted objects is fixed, so output is byte-stable.

namespace nilwreath {

using json = nlohmann::ordered_json;

namespace jsonio {

// -- location-aware readers -------------------------------------------------

inline std::string here(const std::string& where) {
    return where.empty() ? std::string("payload") : where;
}

inline const json& need(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object())
        throw SchemaError("expected an object at " + here(where));
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError("missing field \"" + key + "\" at " + here(where));
    return *it;
}

inline const json* opt(const json& obj, const std::string& key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

// Integers arrive as JSON integers or as decimal strings (for values wider
// than 64 bits); anything else is a schema violation.
inline Int read_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_number_unsigned()) {
        unsigned long long u = j.get<unsigned long long>();
        Int v(static_cast<unsigned long>(u >> 32));
        v <<= 32;
        v += static_cast<unsigned long>(u & 0xffffffffull);
        return v;
    }
    if (j.is_string()) return parse_int(j.get<std::string>(), here(where));
    throw SchemaError("expected an integer at " + here(where));
}

inline long read_long(const json& j, const std::string& where) {
    Int v = read_int(j, where);
    if (!v.fits_slong_p())
        throw SchemaError("integer out of range at " + here(where));
    return v.get_si();
}

inline size_t read_size(const json& j, const std::string& where) {
    long v = read_long(j, where);
    if (v < 0) throw SchemaError("expected a non-negative integer at " + here(where));
    return static_cast<size_t>(v);
}

inline Rat read_rat(const json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rat(read_int(j, where));
    if (j.is_string()) return parse_rat(j.get<std::string>(), here(where));
    throw SchemaError("expected a rational (\"p/q\" string) at " + here(where));
}

inline QVec read_qvec(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError("expected an array at " + here(where));
    QVec v;
    v.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        v.push_back(read_rat(j[i], here(where) + "[" + std::to_string(i) + "]"));
    return v;
}

// Row-major rectangular matrix of rationals.
inline QMat read_qmat(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw SchemaError("expected a nonempty array of rows at " + here(where));
    std::vector<QVec> rows;
    rows.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        rows.push_back(read_qvec(j[i], here(where) + "[" + std::to_string(i) + "]"));
    QMat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw SchemaError("ragged matrix at " + here(where));
        for (size_t k = 0; k < rows[i].size(); ++k) m.at(i, k) = rows[i][k];
    }
    return m;
}

// Lattices are written as a rational matrix whose columns generate them.
inline IntLattice read_lattice(const json& j, const std::string& where) {
    return lattice_from_columns(read_qmat(j, where));
}

inline std::vector<size_t> read_word(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError("expected a word (array of letter indices) at " + here(where));
    std::vector<size_t> w;
    w.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        const json& cell = j[i];
        if (!cell.is_number_integer() && !cell.is_number_unsigned())
            throw SchemaError("letters must be integers at " + here(where) + "[" + std::to_string(i) + "]");
        long v = read_long(cell, here(where) + "[" + std::to_string(i) + "]");
        if (v < 0)
            throw SchemaError("letters must be non-negative at " + here(where) + "[" + std::to_string(i) + "]");
        w.push_back(static_cast<size_t>(v));
    }
    return w;
}

// Algebras: either a shipped one by name or an explicit bracket table
//   {"dim": n, "brackets": [{"i": 1, "j": 2, "v": ["0", ..., "1"]}, ...]}
// with 1-based i < j; omitted pairs commute.
inline NilLieAlg read_algebra(const json& j, const std::string& where) {
    if (const json* name = opt(j, "name")) {
        if (!name->is_string()) throw SchemaError("algebra name must be a string at " + here(where));
        std::string s = name->get<std::string>();
        if (s == "heisenberg") return heisenberg_algebra();
        if (s == "heisenberg5") return heisenberg5_algebra();
        if (s == "free_nilpotent_2_3") return free_nilpotent_2_3();
        if (s == "free_nilpotent_3_2") return free_nilpotent_3_2();
        if (s == "free_nilpotent_4_2") return free_nilpotent_4_2();
        if (s == "abelian")
            return abelian_algebra(read_size(need(j, "n", where), here(where) + ".n"));
        if (s == "filiform")
            return filiform_algebra(read_size(need(j, "n", where), here(where) + ".n"));
        throw SchemaError("unknown algebra name \"" + s + "\" at " + here(where));
    }
    size_t dim = read_size(need(j, "dim", where), here(where) + ".dim");
    std::vector<BracketEntry> entries;
    if (const json* br = opt(j, "brackets")) {
        if (!br->is_array()) throw SchemaError("\"brackets\" must be an array at " + here(where));
        for (size_t k = 0; k < br->size(); ++k) {
            std::string at = here(where) + ".brackets[" + std::to_string(k) + "]";
            const json& e = (*br)[k];
            size_t i = read_size(need(e, "i", at), at + ".i");
            size_t jj = read_size(need(e, "j", at), at + ".j");
            if (i < 1 || jj < 1 || i > dim || jj > dim)
                throw SchemaError("generator index out of range (1-based) at " + at);
            if (i >= jj)
                throw SchemaError("bracket entries need i < j (1-based) at " + at);
            QVec v = read_qvec(need(e, "v", at), at + ".v");
            if (v.size() != dim)
                throw SchemaError("bracket value must have length dim at " + at + ".v");
            entries.emplace_back(i - 1, jj - 1, v);
        }
    }
    return make_algebra(dim, entries);
}

inline Grading read_grading(const json& j, size_t dim, const std::string& where) {
    const json& pieces = need(j, "pieces", where);
    if (!pieces.is_array() || pieces.empty())
        throw SchemaError("\"pieces\" must be a nonempty array at " + here(where));
    Grading g;
    for (size_t k = 0; k < pieces.size(); ++k) {
        std::string at = here(where) + ".pieces[" + std::to_string(k) + "]";
        const json& p = pieces[k];
        long deg = read_long(need(p, "degree", at), at + ".degree");
        const json& basis = need(p, "basis", at);
        if (!basis.is_array() || basis.empty())
            throw SchemaError("piece basis must be a nonempty array of vectors at " + at);
        std::vector<QVec> cols;
        for (size_t c = 0; c < basis.size(); ++c) {
            QVec v = read_qvec(basis[c], at + ".basis[" + std::to_string(c) + "]");
            if (v.size() != dim)
                throw SchemaError("basis vectors must have length dim at " + at);
            cols.push_back(v);
        }
        g.pieces.emplace_back(deg, QMat::from_columns(cols));
    }
    return g;
}

// Multiplicative lattice: {"algebra": ..., "malcev_basis": [vec, ...]}; the
// vectors are generator log-coordinates, verified group-closed and adapted.
inline MultLattice read_mult_lattice(const json& payload, const std::string& where) {
    NilLieAlg alg = read_algebra(need(payload, "algebra", where), here(where) + ".algebra");
    const json& mb = need(payload, "malcev_basis", where);
    if (!mb.is_array() || mb.empty())
        throw SchemaError("\"malcev_basis\" must be a nonempty array of vectors at " + here(where));
    std::vector<QVec> cols;
    for (size_t k = 0; k < mb.size(); ++k) {
        QVec v = read_qvec(mb[k], here(where) + ".malcev_basis[" + std::to_string(k) + "]");
        if (v.size() != alg.dim)
            throw SchemaError("malcev_basis vectors must have length dim at " + here(where));
        cols.push_back(v);
    }
    return make_mult_lattice(alg, QMat::from_columns(cols));
}

// -- writers -----------------------------------------------------------------

inline json write_int(const Int& v) { return format_int(v); }
inline json write_rat(const Rat& r) { return format_rat(r); }

inline json write_qvec(const QVec& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(format_rat(x));
    return a;
}

inline json write_qmat(const QMat& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < m.cols(); ++k) row.push_back(format_rat(m.at(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json write_lattice(const IntLattice& l) { return write_qmat(lattice_rational_basis(l)); }

// Polynomials as ascending coefficient strings: [c0, c1, ..., c_deg].
inline json write_int_poly(const IntPoly& p) {
    json a = json::array();
    for (const Int& c : p.c) a.push_back(format_int(c));
    return a;
}

inline json write_orbit(const GaloisOrbitDatum& o) {
    json j;
    j["poly"] = write_int_poly(o.min_poly);
    j["multiplicity"] = format_int(Int(o.multiplicity));
    j["d"] = format_int(o.d);
    j["alg_integer"] = o.is_alg_integer;
    j["inverse_alg_integer"] = o.inverse_is_alg_integer;
    j["root_of_unity"] = o.is_root_of_unity;
    j["cyclotomic_index"] = format_int(Int(o.cyclotomic_index));
    return j;
}

inline json write_orbits(const std::vector<GaloisOrbitDatum>& orbits) {
    json a = json::array();
    for (const auto& o : orbits) a.push_back(write_orbit(o));
    return a;
}

inline json write_grading(const Grading& g) {
    json pieces = json::array();
    for (const auto& [deg, basis] : g.pieces) {
        json p;
        p["degree"] = format_int(Int(deg));
        json cols = json::array();
        for (size_t c = 0; c < basis.cols(); ++c) cols.push_back(write_qvec(basis.column(c)));
        p["basis"] = cols;
        pieces.push_back(std::move(p));
    }
    json j;
    j["pieces"] = std::move(pieces);
    return j;
}

inline json write_spectral_flags(const SpectralReport& r) {
    json j;
    j["in_s"] = r.in_s;
    j["in_v"] = r.in_v;
    j["in_f"] = r.in_f;
    j["in_f_plus"] = r.in_f_plus;
    return j;
}

inline json write_word(const std::vector<size_t>& w) {
    json a = json::array();
    for (size_t x : w) a.push_back(x);
    return a;
}

// Human form for table mode: "2t^2 + 2t + 1" with ascending input order.
inline std::string poly_display(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long k = p.degree(); k >= 0; --k) {
        Int c = p.coeff(static_cast<size_t>(k));
        if (c == 0) continue;
        bool neg = c < 0;
        Int mag = neg ? Int(-c) : c;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        bool unit = (mag == 1) && k > 0;
        if (!unit) out += mag.get_str();
        if (k > 0) out += "t";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace jsonio
}  // namespace nilwreath
