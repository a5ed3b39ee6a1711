#include "deltakit/json_io.hpp"

namespace deltakit {

Nat readNat(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw SchemaError(std::string(what) + ": expected a natural number");
  return j.get<Nat>();
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json encode(const pfn::LinPerPF& raw) {
  const pfn::LinPerPF x = raw.canonical();
  Json prefix = Json::array();
  for (Nat n = 0; n < x.cut(); ++n) {
    const Value& v = x.prefix()[n];
    prefix.push_back(Json::array({n, v ? Json(*v) : Json(nullptr)}));
  }
  Json classes = Json::array();
  for (const TailClass& c : x.classes()) {
    if (c) classes.push_back({{"kind", "affine"}, {"a", c->slope}, {"b", c->intercept}});
    else classes.push_back({{"kind", "undef"}});
  }
  return {{"prefix", prefix}, {"cut", x.cut()}, {"period", x.period()}, {"classes", classes}};
}

pfn::LinPerPF decodeLinPer(const Json& j) {
  const Nat cut = readNat(field(j, "cut"), "cut");
  const Nat period = readNat(field(j, "period"), "period");
  const Json& prefixJson = field(j, "prefix");
  const Json& classesJson = field(j, "classes");
  if (!prefixJson.is_array() || !classesJson.is_array()) throw SchemaError("prefix and classes must be arrays");
  if (prefixJson.size() != cut) throw SchemaError("prefix must list every index below cut exactly once");
  if (classesJson.size() != period || period == 0) throw SchemaError("classes must have exactly period >= 1 entries");
  std::vector<Value> prefix(cut);
  std::vector<bool> seen(cut, false);
  for (const Json& e : prefixJson) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("prefix entries are [index, value-or-null]");
    const Nat n = readNat(e[0], "prefix index");
    if (n >= cut || seen[n]) throw SchemaError("prefix indices must be exactly 0..cut-1");
    seen[n] = true;
    if (!e[1].is_null()) prefix[n] = readNat(e[1], "prefix value");
  }
  std::vector<TailClass> classes(period);
  for (Nat r = 0; r < period; ++r) {
    const Json& c = classesJson[r];
    const std::string kind = field(c, "kind").get<std::string>();
    if (kind == "affine") classes[r] = Affine{readNat(field(c, "a"), "a"), readNat(field(c, "b"), "b")};
    else if (kind != "undef") throw SchemaError("class kind must be \"undef\" or \"affine\"");
  }
  return pfn::LinPerPF(std::move(prefix), std::move(classes));
}

Json encode(const pfn::FinitePF& x) {
  Json entries = Json::array();
  for (Nat n : x.domain()) entries.push_back(Json::array({n, *x.at(n)}));
  return {{"entries", entries}, {"horizon", x.horizon()}, {"threshold", x.threshold()}};
}

pfn::FinitePF decodeFinite(const Json& j) {
  const Nat horizon = readNat(field(j, "horizon"), "horizon");
  const Nat threshold = j.contains("threshold") ? readNat(j.at("threshold"), "threshold") : 0;
  std::vector<Value> values(horizon);
  for (const Json& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 2) throw SchemaError("entries are [index, value]");
    const Nat n = readNat(e[0], "entry index");
    if (n >= horizon) throw SchemaError("entry index beyond horizon");
    if (values[n]) throw SchemaError("duplicate entry index");
    values[n] = readNat(e[1], "entry value");
  }
  if (threshold > horizon) throw SchemaError("threshold exceeds horizon");
  return pfn::FinitePF(std::move(values), threshold);
}

Json encode(const IndexSet& raw) {
  const IndexSet s = raw.canonical();
  Json prefix = Json::array(), cycle = Json::array();
  for (char b : s.bits().prefix()) prefix.push_back(b ? 1 : 0);
  for (char b : s.bits().cycle()) cycle.push_back(b ? 1 : 0);
  return {{"prefix", prefix}, {"period", s.bits().period()}, {"cycle", cycle}};
}

IndexSet decodeIndexSet(const Json& j) {
  std::vector<char> prefix, cycle;
  for (const Json& b : field(j, "prefix")) prefix.push_back(readNat(b, "bit") ? 1 : 0);
  for (const Json& b : field(j, "cycle")) cycle.push_back(readNat(b, "bit") ? 1 : 0);
  if (cycle.empty()) throw SchemaError("cycle must be nonempty");
  return IndexSet(Periodic<char>(std::move(prefix), std::move(cycle)));
}

Json encode(const pfn::Certificate& c) {
  Json j{{"kind", c.kind}};
  if (c.kind == "eventually") j["from"] = c.from;
  else if (c.kind == "infinitely-often") {
    j["grid"] = {{"cut", c.grid.cut}, {"period", c.grid.period}};
    j["residues"] = c.residues;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace deltakit
