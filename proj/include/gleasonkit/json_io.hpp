#pragma once

#include <nlohmann/json.hpp>

#include "gleasonkit/bipartite.hpp"
#include "gleasonkit/contexts.hpp"
#include "gleasonkit/gleason.hpp"
#include "gleasonkit/jordan.hpp"

namespace gleasonkit::io {

using nlohmann::json;

// Schema errors throw Error("parse-error"); semantic failures (a context that
// is not a PVM, a non-Hermitian operator) propagate the library's own codes.

/// {"rows":r,"cols":c,"entries":[[re,im],...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json vector_to_json(const ComplexVector& v);  // [[re,im],...]
ComplexVector vector_from_json(const json& j);

json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const json& j);

json context_to_json(const Context& c);
Context context_from_json(const json& j);

json poset_to_json(const ContextPoset& p);
ContextPoset poset_from_json(const json& j);

json section_to_json(const Section& s);
Section section_from_json(const json& j);

/// {"d1","d2","poset1","poset2","values":[{"label1","label2","table":[...]},...]}
json bipartite_section_to_json(const BipartiteSection& s);
BipartiteSection bipartite_section_from_json(const json& j);

/// {"d1","d2","R":Matrix,"trace":f}
json functional_to_json(const FunctionalOperator& r);
FunctionalOperator functional_from_json(const json& j);

json reconstruction_to_json(const ReconstructionResult& r);
json classification_to_json(const Classification& c);
json superoperator_to_json(const SuperOperator& s);
SuperOperator superoperator_from_json(const json& j);
json dilation_to_json(const DilationTriple& t);

}  // namespace gleasonkit::io
