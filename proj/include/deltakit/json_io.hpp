#pragma once

#include <json.hpp>

#include "deltakit/linper.hpp"
#include "deltakit/periodic.hpp"
#include "deltakit/pfn.hpp"

namespace deltakit {

using Json = nlohmann::json;

/// Raised for JSON documents that do not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSchemaVersion = "deltakit/1";

/// LinPerPF in canonical form:
/// {"prefix":[[n,v|null],...],"cut":c,"period":p,"classes":[{"kind":"undef"}|{"kind":"affine","a":..,"b":..}]}
Json encode(const pfn::LinPerPF& x);
pfn::LinPerPF decodeLinPer(const Json& j);

/// {"entries":[[n,v],...],"horizon":N,"threshold":t}
Json encode(const pfn::FinitePF& x);
pfn::FinitePF decodeFinite(const Json& j);

/// {"prefix":[0|1,...],"period":p,"cycle":[0|1,...]}
Json encode(const IndexSet& s);
IndexSet decodeIndexSet(const Json& j);

Json encode(const pfn::Certificate& c);

Nat readNat(const Json& j, const char* what);

}  // namespace deltakit
