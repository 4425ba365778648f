#pragma once

#include <filesystem>
#include <stdexcept>
#include <variant>

#include "chainmodel/checker.hpp"

namespace chainmodel {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk document: schema-versioned JSON with a ring descriptor and one
/// payload. Matrices are row-major arrays of decimal strings, so integer
/// entries of any size round-trip exactly.
struct Document {
  static constexpr const char* kSchemaVersion = "1";

  using Payload = std::variant<ChainComplex<Integer>, ChainComplex<Fp>, ChainMap<Integer>,
                               ChainMap<Fp>, KEpsModule, KEpsHom, Verdict, PresentedGroup>;

  RingDesc ring;
  Payload payload;

  std::string type_name() const;
};

Document make_document(ChainComplex<Integer> x);
Document make_document(ChainComplex<Fp> x);
Document make_document(ChainMap<Integer> f);
Document make_document(ChainMap<Fp> f);
Document make_document(KEpsModule m);
Document make_document(KEpsHom h);
Document make_document(RingDesc ring, Verdict v);
Document make_document(PresentedGroup g);

/// Parses and validates a document; throws IoError with a field/degree
/// diagnostic on malformed input.
Document load_document(const std::filesystem::path& path);
Document parse_document(const std::string& text, const std::string& origin = "<string>");

void store_document(const Document& doc, const std::filesystem::path& path);
std::string serialize_document(const Document& doc);

/// Apply a callable to a loaded chain complex of either ring.
template <class F>
decltype(auto) with_complex(const Document& doc, F&& f) {
  if (auto* z = std::get_if<ChainComplex<Integer>>(&doc.payload)) return f(*z);
  if (auto* p = std::get_if<ChainComplex<Fp>>(&doc.payload)) return f(*p);
  throw IoError("document is not a complex (type " + doc.type_name() + ")");
}

template <class F>
decltype(auto) with_chain_map(const Document& doc, F&& f) {
  if (auto* z = std::get_if<ChainMap<Integer>>(&doc.payload)) return f(*z);
  if (auto* p = std::get_if<ChainMap<Fp>>(&doc.payload)) return f(*p);
  throw IoError("document is not a chain map (type " + doc.type_name() + ")");
}

}  // namespace chainmodel
