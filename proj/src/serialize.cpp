#include "fbh/serialize.hpp"

namespace fbh {

Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Vector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v[i]));
    return a;
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Point& p) { return Json{{"z", to_json(p.z)}, {"w", to_json(p.w)}}; }

Json to_json(const KernelValue& k) {
    return Json{{"value", to_json(k.value)},
                {"tail_bound", k.tail_bound},
                {"terms_used", k.terms_used}};
}

Json to_json(const Automorphism& g) {
    return Json{{"U", to_json(g.U)}, {"Uw", to_json(g.Uw)}, {"v", to_json(g.v)},
                {"n", g.n},          {"m", g.m},            {"mu", g.mu}};
}

Json to_json(const BranchReport& r) {
    return Json{{"locus_description", r.locus_description},
                {"min_boundary_gap", r.min_boundary_gap},
                {"closure_meets_boundary", r.closure_meets_boundary}};
}

Json to_json(const McEstimate& e) {
    return Json{{"estimate", to_json(e.estimate)},
                {"standard_error", e.standard_error},
                {"samples", e.samples},
                {"seed", e.seed}};
}

Json to_json(const Decomposition& d) {
    Json j{{"accepted", d.accepted}, {"reason", d.reason}};
    if (d.accepted) {
        j["U"] = to_json(d.U);
        j["B"] = to_json(d.B);
    }
    return j;
}

namespace {

[[noreturn]] void bad(const char* what) {
    throw Error(std::string("malformed JSON: ") + what);
}

}  // namespace

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array()) bad("vector must be an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    return v;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) bad("matrix rows must be non-empty arrays");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) bad("matrix rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k]);
    }
    return m;
}

Point point_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("z") || !j.contains("w"))
        bad("point must be {\"z\": [...], \"w\": [...]}");
    return {vector_from_json(j["z"]), vector_from_json(j["w"])};
}

Automorphism automorphism_from_json(const Json& j) {
    if (!j.is_object()) bad("automorphism must be an object");
    for (const char* key : {"U", "Uw", "v", "n", "m", "mu"})
        if (!j.contains(key)) bad("automorphism is missing a field");
    const FBHDomain d(j["n"].get<int>(), j["m"].get<int>(), j["mu"].get<double>());
    return {matrix_from_json(j["U"]), matrix_from_json(j["Uw"]), vector_from_json(j["v"]), d};
}

}  // namespace fbh
