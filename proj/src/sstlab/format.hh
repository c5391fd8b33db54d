// The .sst text format.

#ifndef SSTLAB_FORMAT_HH
#define SSTLAB_FORMAT_HH

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstlab/approximants.hh"
#include "sstlab/sst.hh"

namespace sstlab {

/// A parsed document. Annotated documents declare `alpha` and give every state a body with its
/// origin and approximant.
struct SstDocument {
    Sst machine;
    std::optional<std::size_t> alpha;
    std::vector<std::string> origin;
    std::vector<Approximant> annotation;

    bool annotated() const { return alpha.has_value(); }
};

/// Parses and canonicalizes. Throws Error(Parse) with a "line:col: " prefix. Registers missing
/// from a transition body keep their value.
SstDocument parse_document(const std::string& text);

/// The machine of parse_document, annotation dropped.
Sst parse_sst(const std::string& text);

/// Throws Error(InvalidArgument) if the document has no annotation.
AnnotatedSst to_annotated(const SstDocument& doc);

/// Canonical text; parse_sst(serialize_sst(T)) serializes identically.
std::string serialize_sst(const Sst& sst);
std::string serialize_annotated(const AnnotatedSst& a);

} // namespace sstlab

#endif
