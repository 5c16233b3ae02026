#include "gleasonkit/json_io.hpp"

namespace gleasonkit::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("parse-error", std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw Error("parse-error", std::string("field '") + key + "': " + e.what());
  }
}

Complex complex_from_json(const json& z) {
  if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
    throw Error("parse-error", "complex entries are [re, im] pairs");
  return {z[0].get<double>(), z[1].get<double>()};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) entries.push_back({m(i, k).real(), m(i, k).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = get<long long>(j, "rows");
  const auto cols = get<long long>(j, "cols");
  const json& entries = field(j, "entries");
  if (rows < 1 || cols < 1 || !entries.is_array() || static_cast<long long>(entries.size()) != rows * cols)
    throw Error("parse-error", "matrix entries count must equal rows*cols");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(entries[static_cast<std::size_t>(i * cols + k)]);
  if (!all_finite(m)) throw Error("parse-error", "non-finite matrix entry");
  return m;
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error("parse-error", "vector must be an array");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

json real_vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RealVector real_vector_from_json(const json& j) {
  if (!j.is_array()) throw Error("parse-error", "probability vector must be an array");
  RealVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error("parse-error", "probabilities must be numbers");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

json context_to_json(const Context& c) {
  json ps = json::array();
  for (const auto& p : c.projections()) ps.push_back(matrix_to_json(p));
  return {{"dim", c.dim()}, {"projections", std::move(ps)}, {"label", c.label()}};
}

Context context_from_json(const json& j) {
  const auto dim = get<long long>(j, "dim");
  const json& ps = field(j, "projections");
  if (!ps.is_array()) throw Error("parse-error", "projections must be an array");
  std::vector<ComplexMatrix> projections;
  for (const auto& p : ps) {
    projections.push_back(matrix_from_json(p));
    if (projections.back().rows() != dim || projections.back().cols() != dim)
      throw Error("parse-error", "projection shape differs from context dim");
  }
  return Context(std::move(projections), get<std::string>(j, "label"));
}

json poset_to_json(const ContextPoset& p) {
  json cs = json::array();
  for (const auto& c : p.contexts()) cs.push_back(context_to_json(c));
  json arrows = json::array();
  for (const auto& a : p.arrows()) arrows.push_back({{"coarse", a.coarse}, {"fine", a.fine}, {"partition", a.partition}});
  return {{"contexts", std::move(cs)}, {"arrows", std::move(arrows)}};
}

ContextPoset poset_from_json(const json& j) {
  const json& cs = field(j, "contexts");
  if (!cs.is_array()) throw Error("parse-error", "contexts must be an array");
  ContextPoset poset;
  for (const auto& c : cs) poset.add_context(context_from_json(c));
  if (j.contains("arrows")) {
    for (const auto& a : j.at("arrows"))
      poset.add_arrow({get<std::string>(a, "coarse"), get<std::string>(a, "fine"), get<Partition>(a, "partition")});
  }
  return poset;
}

json section_to_json(const Section& s) {
  json values = json::object();
  for (const auto& [label, v] : s.values) values[label] = real_vector_to_json(v);
  return {{"poset", poset_to_json(s.poset)}, {"values", std::move(values)}};
}

Section section_from_json(const json& j) {
  Section s{poset_from_json(field(j, "poset")), {}};
  const json& values = field(j, "values");
  if (!values.is_object()) throw Error("parse-error", "values must be an object");
  for (const auto& [label, v] : values.items()) s.values.emplace(label, real_vector_from_json(v));
  return s;
}

json bipartite_section_to_json(const BipartiteSection& s) {
  json values = json::array();
  for (const auto& [labels, t] : s.values)
    values.push_back({{"label1", labels.first}, {"label2", labels.second}, {"table", real_vector_to_json(t)}});
  return {{"d1", s.d1()},
          {"d2", s.d2()},
          {"poset1", poset_to_json(s.poset1)},
          {"poset2", poset_to_json(s.poset2)},
          {"values", std::move(values)}};
}

BipartiteSection bipartite_section_from_json(const json& j) {
  BipartiteSection s{poset_from_json(field(j, "poset1")), poset_from_json(field(j, "poset2")), {}};
  if (get<long long>(j, "d1") != s.d1() || get<long long>(j, "d2") != s.d2())
    throw Error("parse-error", "declared dims differ from poset dims");
  const json& values = field(j, "values");
  if (!values.is_array()) throw Error("parse-error", "values must be an array");
  for (const auto& e : values)
    s.values.emplace(LabelPair{get<std::string>(e, "label1"), get<std::string>(e, "label2")},
                     real_vector_from_json(field(e, "table")));
  return s;
}

json functional_to_json(const FunctionalOperator& r) {
  return {{"d1", r.d1()}, {"d2", r.d2()}, {"R", matrix_to_json(r.matrix())}, {"trace", r.trace_value()}};
}

FunctionalOperator functional_from_json(const json& j) {
  const auto d1 = get<long long>(j, "d1");
  const auto d2 = get<long long>(j, "d2");
  return FunctionalOperator(d1, d2, HermitianOperator(matrix_from_json(field(j, "R"))));
}

json reconstruction_to_json(const ReconstructionResult& r) {
  return {{"state", matrix_to_json(r.state.matrix())},
          {"residual", r.residual},
          {"completeness_rank", r.completeness_rank},
          {"psd_defect", r.psd_defect},
          {"is_state", r.is_state}};
}

json classification_to_json(const Classification& c) {
  json witness = nullptr;
  if (c.witness) witness = {{"u", vector_to_json(c.witness->u)}, {"v", vector_to_json(c.witness->v)}};
  return {{"verdict", to_string(c.verdict)},
          {"min_eigenvalue", c.min_eigenvalue},
          {"min_product_expectation", c.min_product_expectation},
          {"orientation", to_string(c.orientation)},
          {"witness", std::move(witness)},
          {"restarts", c.restarts},
          {"seed", c.seed}};
}

json superoperator_to_json(const SuperOperator& s) {
  return {{"in_dim", s.in_dim()}, {"out_dim", s.out_dim()}, {"matrix", matrix_to_json(s.matrix())},
          {"vec_convention", "column"}};
}

SuperOperator superoperator_from_json(const json& j) {
  if (j.contains("vec_convention") && j.at("vec_convention") != "column")
    throw Error("parse-error", "only column-stacking superoperators are supported");
  return SuperOperator(get<long long>(j, "in_dim"), get<long long>(j, "out_dim"), matrix_from_json(field(j, "matrix")));
}

json dilation_to_json(const DilationTriple& t) {
  json rep = json::array();
  for (const auto& m : t.representation) rep.push_back(matrix_to_json(m));
  return {{"ancilla_dim", t.ancilla_dim},
          {"isometry_or_vector", matrix_to_json(t.isometry_or_vector)},
          {"representation", std::move(rep)},
          {"verification_error", t.verification_error}};
}

}  // namespace gleasonkit::io
