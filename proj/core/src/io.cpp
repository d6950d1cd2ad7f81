#include "boolpart/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

namespace boolpart {

const char* version() { return BOOLPART_VERSION; }

}  // namespace boolpart

namespace boolpart::io {

using nlohmann::json;

namespace {

std::string line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return "line " + std::to_string(1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_document(std::string_view text, const char* expected_kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(line_of(text, e.byte > 0 ? e.byte - 1 : 0), what);
  }
  if (!doc.is_object()) throw ParseError("", "artifact must be a JSON object");
  if (doc.contains("format") && doc["format"] != kFormatVersion)
    throw ParseError("format", "unsupported format version " + doc["format"].dump());
  if (expected_kind && doc.contains("kind") && doc["kind"] != expected_kind)
    throw ParseError("kind", "expected '" + std::string(expected_kind) + "', found " + doc["kind"].dump());
  return doc;
}

const json& field(const json& obj, const std::string& name, const std::string& ctx = "") {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(ctx + name, "missing field");
  return *it;
}

template <class T>
T get(const json& obj, const std::string& name, const std::string& ctx = "") {
  const json& v = field(obj, name, ctx);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(ctx + name, e.what());
  }
}

mpz_class to_mpz(const json& v, const std::string& where) {
  try {
    mpz_class out;
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (!v.is_string() || out.set_str(v.get<std::string>(), 10) != 0) throw ParseError(where, "not an integer");
    return out;
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  }
}

std::string canonical_dump(const json& doc) {
  std::ostringstream out;
  out << "{\n";
  std::size_t i = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it, ++i) {
    out << "  " << json(it.key()).dump() << ": ";
    const json& v = it.value();
    bool nested = v.is_array() && !v.empty() && std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
    if (nested) {
      out << "[\n";
      for (std::size_t j = 0; j < v.size(); ++j) out << "    " << v[j].dump() << (j + 1 < v.size() ? ",\n" : "\n");
      out << "  ]";
    } else {
      out << v.dump();
    }
    out << (i + 1 < doc.size() ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

json manifest_json(const RunManifest& m) {
  return json{{"command", m.command}, {"tool_version", m.tool_version}, {"inputs", m.inputs},
              {"budgets", m.budgets}, {"outcome", m.outcome}};
}

RunManifest manifest_from(const json& j) {
  RunManifest m;
  m.command = get<std::string>(j, "command", "manifest.");
  m.tool_version = get<std::string>(j, "tool_version", "manifest.");
  m.inputs = get<std::map<std::string, std::string>>(j, "inputs", "manifest.");
  m.budgets = get<std::map<std::string, std::string>>(j, "budgets", "manifest.");
  m.outcome = get<std::string>(j, "outcome", "manifest.");
  return m;
}

json poset_json(const Poset& p) {
  json covers = json::array();
  for (auto [a, b] : p.cover_pairs()) covers.push_back({p.id(a), p.id(b)});
  return json{{"elements", p.ids()}, {"covers", covers}};
}

Poset poset_from(const json& j, const std::string& ctx) {
  auto ids = get<std::vector<std::string>>(j, "elements", ctx);
  std::vector<Poset::Relation> rel;
  if (j.contains("covers")) {
    const json& covers = j["covers"];
    if (!covers.is_array()) throw ParseError(ctx + "covers", "must be an array");
    for (const auto& pair : covers) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        throw ParseError(ctx + "covers", "each cover must be [lower, upper]");
      rel.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  try {
    return Poset::from_relations(std::move(ids), rel);
  } catch (const InvalidArgument& e) {
    throw ParseError(ctx + "covers", e.what());
  }
}

json mask_json(Mask m) { return mask_elements(m); }

Mask mask_from(const json& j, int n, const std::string& where) {
  try {
    auto elems = j.get<std::vector<int>>();
    return mask_from_elements(elems, n);
  } catch (const json::exception& e) {
    throw ParseError(where, e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(where, e.what());
  }
}

json weights_json(const WeightFunction& w) {
  json entries = json::array();
  for (const auto& [key, value] : w.entries()) {
    json copy = json::array();
    for (auto m : key) copy.push_back(mask_json(m));
    entries.push_back({copy, value.get_num().get_str(), value.get_den().get_str()});
  }
  return entries;
}

WeightFunction weights_from(const json& j, WeightDomain domain, int n, const std::string& where) {
  WeightFunction w(domain);
  if (!j.is_array()) throw ParseError(where, "must be an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3 || !e[0].is_array()) throw ParseError(at, "entry must be [copy, numerator, denominator]");
    MemberKey key;
    for (const auto& m : e[0]) key.push_back(mask_from(m, n, at));
    mpq_class q(to_mpz(e[1], at), to_mpz(e[2], at));
    if (q.get_den() == 0) throw ParseError(at, "zero denominator");
    q.canonicalize();
    w.add(std::move(key), q);
  }
  return w;
}

WeightDomain domain_from(const std::string& s, const std::string& where) {
  for (auto d : {WeightDomain::NonNegativeRational, WeightDomain::NonNegativeInteger, WeightDomain::Integer})
    if (s == to_string(d)) return d;
  throw ParseError(where, "unknown weight domain '" + s + "'");
}

// Ground label sets.
json set_json(ElementSet s, const std::vector<std::string>& ground) {
  json out = json::array();
  for (int e : set_elements(s)) out.push_back(ground[static_cast<std::size_t>(e)]);
  return out;
}

struct Labels {
  std::map<std::string, int> index;
  explicit Labels(const std::vector<std::string>& ground) {
    for (std::size_t i = 0; i < ground.size(); ++i) index[ground[i]] = static_cast<int>(i);
  }
  int at(const json& label, const std::string& where) const {
    if (!label.is_string()) throw ParseError(where, "ground label must be a string");
    auto it = index.find(label.get<std::string>());
    if (it == index.end()) throw ReferenceError(where, "undefined ground label '" + label.get<std::string>() + "'");
    return it->second;
  }
  ElementSet set(const json& j, const std::string& where) const {
    if (!j.is_array()) throw ParseError(where, "must be a list of ground labels");
    ElementSet s = 0;
    for (const auto& e : j) s |= ElementSet{1} << at(e, where);
    return s;
  }
};

std::vector<std::string> ground_from(const json& doc) {
  auto ground = get<std::vector<std::string>>(doc, "ground");
  if (ground.empty() || ground.size() > kMaxGroundSize) throw ParseError("ground", "needs 1..64 labels");
  std::vector<std::string> sorted = ground;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ParseError("ground", "duplicate label");
  return ground;
}

json header(const char* kind) { return json{{"format", kFormatVersion}, {"kind", kind}}; }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string peek_kind(std::string_view text) {
  json doc = parse_document(text, nullptr);
  return get<std::string>(doc, "kind");
}

std::string save_poset(const Poset& poset) {
  json doc = header("poset");
  doc.update(poset_json(poset));
  return canonical_dump(doc);
}

Poset load_poset(std::string_view text) { return poset_from(parse_document(text, "poset"), ""); }

std::string save_weak_certificate(const WeakCertificate& cert) {
  json doc = header("weak-certificate");
  doc["type"] = to_string(cert.kind);
  doc["poset"] = poset_json(cert.poset);
  doc["n"] = cert.n;
  doc["r"] = cert.r.get_str();
  json image = json::array();
  for (auto m : cert.base.image) image.push_back(mask_json(m));
  doc["base_dimension"] = cert.base.dimension;
  doc["base_image"] = image;
  doc["domain"] = to_string(cert.weights.domain());
  doc["weights"] = weights_json(cert.weights);
  if (cert.integer_stage) doc["integer_stage"] = weights_json(*cert.integer_stage);
  if (cert.manifest) doc["manifest"] = manifest_json(*cert.manifest);
  return canonical_dump(doc);
}

WeakCertificate load_weak_certificate(std::string_view text) {
  json doc = parse_document(text, "weak-certificate");
  WeakCertificate c;
  const auto type = get<std::string>(doc, "type");
  if (type == to_string(WeakKind::RPartition)) c.kind = WeakKind::RPartition;
  else if (type == to_string(WeakKind::ModPartition)) c.kind = WeakKind::ModPartition;
  else throw ParseError("type", "unknown certificate type '" + type + "'");
  c.poset = poset_from(field(doc, "poset"), "poset.");
  c.n = get<int>(doc, "n");
  if (c.n < 0 || c.n > kMaxLatticeDimension) throw ParseError("n", "outside 0..63");
  c.r = to_mpz(field(doc, "r"), "r");
  c.base.dimension = get<int>(doc, "base_dimension");
  if (c.base.dimension < 0 || c.base.dimension > kMaxLatticeDimension) throw ParseError("base_dimension", "outside 0..63");
  const json& image = field(doc, "base_image");
  if (!image.is_array()) throw ParseError("base_image", "must be an array");
  for (const auto& m : image) c.base.image.push_back(mask_from(m, c.base.dimension, "base_image"));
  c.weights = weights_from(field(doc, "weights"), domain_from(get<std::string>(doc, "domain"), "domain"), c.n, "weights");
  if (doc.contains("integer_stage"))
    c.integer_stage = weights_from(doc["integer_stage"], WeightDomain::Integer, c.n, "integer_stage");
  if (doc.contains("manifest")) c.manifest = manifest_from(doc["manifest"]);
  return c;
}

std::string save_instance(const ProductInstance& inst) {
  json doc = header("instance");
  doc["ground"] = inst.ground;
  json family = json::object();
  for (const auto& [id, set] : inst.family) family[id] = set_json(set, inst.ground);
  doc["family"] = family;
  doc["A"] = set_json(inst.a, inst.ground);
  doc["B"] = set_json(inst.b, inst.ground);
  if (inst.r_witness) doc["r_witness"] = json{{"r", inst.r_witness->r}, {"members", inst.r_witness->members}};
  if (inst.mod_witness) doc["mod_witness"] = json{{"members", inst.mod_witness->members}};
  return canonical_dump(doc);
}

ProductInstance load_instance(std::string_view text) {
  json doc = parse_document(text, "instance");
  ProductInstance inst;
  inst.ground = ground_from(doc);
  Labels labels(inst.ground);
  const json& family = field(doc, "family");
  if (!family.is_object()) throw ParseError("family", "must map member ids to label lists");
  for (auto it = family.begin(); it != family.end(); ++it)
    inst.family[it.key()] = labels.set(it.value(), "family." + it.key());
  inst.a = labels.set(field(doc, "A"), "A");
  inst.b = labels.set(field(doc, "B"), "B");
  auto check_ids = [&](const std::vector<std::string>& ids, const std::string& where) {
    for (const auto& id : ids)
      if (!inst.family.count(id)) throw ReferenceError(where, "undefined member id '" + id + "'");
  };
  if (doc.contains("r_witness")) {
    RWitness w;
    w.r = get<int>(doc["r_witness"], "r", "r_witness.");
    w.members = get<std::vector<std::string>>(doc["r_witness"], "members", "r_witness.");
    check_ids(w.members, "r_witness.members");
    inst.r_witness = std::move(w);
  }
  if (doc.contains("mod_witness")) {
    ModWitness w;
    w.members = get<std::vector<std::string>>(doc["mod_witness"], "members", "mod_witness.");
    check_ids(w.members, "mod_witness.members");
    inst.mod_witness = std::move(w);
  }
  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError("family", e.what());
  }
  return inst;
}

std::string save_certificate(const PartitionCertificate& cert_in) {
  PartitionCertificate cert = cert_in;
  canonicalize(cert);
  json doc = header("certificate");
  doc["ground"] = cert.ground;
  json members = json::object();
  for (const auto& m : cert.members) members[m.id] = set_json(m.set, cert.ground);
  doc["members"] = members;
  doc["dimension"] = cert.dimension;
  if (!cert.coordinate_map.empty()) doc["coordinate_map"] = cert.coordinate_map;
  json region = json::array();
  for (const auto& box : cert.region.boxes()) {
    json factors = json::array();
    for (auto f : box.factors) factors.push_back(set_json(f, cert.ground));
    region.push_back(factors);
  }
  doc["region"] = region;
  json tiles = json::array();
  for (const auto& t : cert.tiles) {
    json fixed = json::array();
    for (std::size_t c = 0; c < t.fixed.size(); ++c) {
      if (c == t.host) fixed.push_back(nullptr);
      else fixed.push_back(cert.ground.at(static_cast<std::size_t>(t.fixed[c])));
    }
    tiles.push_back({cert.members.at(t.member).id, t.host, fixed});
  }
  doc["tiles"] = tiles;
  if (cert.manifest) doc["manifest"] = manifest_json(*cert.manifest);
  return canonical_dump(doc);
}

PartitionCertificate load_certificate(std::string_view text) {
  json doc = parse_document(text, "certificate");
  PartitionCertificate cert;
  cert.ground = ground_from(doc);
  Labels labels(cert.ground);
  const json& members = field(doc, "members");
  if (!members.is_object()) throw ParseError("members", "must map member ids to label lists");
  std::map<std::string, std::uint32_t> index;
  for (auto it = members.begin(); it != members.end(); ++it) {
    index[it.key()] = static_cast<std::uint32_t>(cert.members.size());
    cert.members.push_back({it.key(), labels.set(it.value(), "members." + it.key())});
  }
  cert.dimension = get<int>(doc, "dimension");
  if (cert.dimension < 0) throw ParseError("dimension", "must be nonnegative");
  const auto dim = static_cast<std::size_t>(cert.dimension);
  if (doc.contains("coordinate_map")) cert.coordinate_map = get<std::vector<int>>(doc, "coordinate_map");
  cert.region = Region(dim);
  const json& region = field(doc, "region");
  if (!region.is_array()) throw ParseError("region", "must be a list of boxes");
  for (std::size_t b = 0; b < region.size(); ++b) {
    const std::string at = "region[" + std::to_string(b) + "]";
    if (!region[b].is_array() || region[b].size() != dim) throw ParseError(at, "box must have one factor per coordinate");
    Box box;
    for (const auto& f : region[b]) box.factors.push_back(labels.set(f, at));
    cert.region.add(std::move(box));
  }
  const json& tiles = field(doc, "tiles");
  if (!tiles.is_array()) throw ParseError("tiles", "must be a list");
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string at = "tiles[" + std::to_string(i) + "]";
    const json& t = tiles[i];
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_number_unsigned() || !t[2].is_array())
      throw ParseError(at, "tile must be [member, host, fixed]");
    auto it = index.find(t[0].get<std::string>());
    if (it == index.end()) throw ReferenceError(at, "undefined member id '" + t[0].get<std::string>() + "'");
    Tile tile;
    tile.member = it->second;
    tile.host = t[1].get<std::uint32_t>();
    if (t[2].size() != dim) throw ParseError(at, "fixed assignment must have one entry per coordinate");
    for (std::size_t c = 0; c < dim; ++c) {
      if (c == tile.host) {
        if (!t[2][c].is_null()) throw ParseError(at, "host slot of the fixed assignment must be null");
        tile.fixed.push_back(0);
      } else {
        tile.fixed.push_back(labels.at(t[2][c], at));
      }
    }
    cert.tiles.push_back(std::move(tile));
  }
  if (doc.contains("manifest")) cert.manifest = manifest_from(doc["manifest"]);
  return cert;
}

std::string save_lattice_partition(const LatticePartition& p) {
  json doc = header("lattice-partition");
  doc["poset"] = poset_json(p.poset);
  doc["n"] = p.n;
  std::vector<LatticeCopy> sorted = p.tiles;
  for (auto& t : sorted) std::sort(t.begin(), t.end());
  std::sort(sorted.begin(), sorted.end());
  json tiles = json::array();
  for (const auto& t : sorted) {
    json tile = json::array();
    for (auto m : t) tile.push_back(mask_json(m));
    tiles.push_back(tile);
  }
  doc["tiles"] = tiles;
  if (p.manifest) doc["manifest"] = manifest_json(*p.manifest);
  return canonical_dump(doc);
}

LatticePartition load_lattice_partition(std::string_view text) {
  json doc = parse_document(text, "lattice-partition");
  LatticePartition p;
  p.poset = poset_from(field(doc, "poset"), "poset.");
  p.n = get<int>(doc, "n");
  if (p.n < 0 || p.n > kMaxLatticeDimension) throw ParseError("n", "outside 0..63");
  const json& tiles = field(doc, "tiles");
  if (!tiles.is_array()) throw ParseError("tiles", "must be a list");
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const std::string at = "tiles[" + std::to_string(i) + "]";
    if (!tiles[i].is_array()) throw ParseError(at, "tile must be a list of lattice elements");
    LatticeCopy copy;
    for (const auto& m : tiles[i]) copy.push_back(mask_from(m, p.n, at));
    std::sort(copy.begin(), copy.end());
    p.tiles.push_back(std::move(copy));
  }
  if (doc.contains("manifest")) p.manifest = manifest_from(doc["manifest"]);
  return p;
}

std::string save_general_plan(const GeneralResult& result, const std::vector<std::string>& stage_files,
                              const std::vector<std::string>& stage_digests, const RunManifest& manifest) {
  json doc = header("general-plan");
  doc["cover"] = result.cover;
  doc["q"] = result.q;
  json p = json::array();
  for (const auto& x : result.p) p.push_back(x.get_str());
  doc["p"] = p;
  doc["dimension"] = result.dimension().get_str();
  doc["plan_only"] = result.plan_only;
  json stages = json::array();
  for (std::size_t i = 0; i < result.stages.size(); ++i) {
    const auto& s = result.stages[i];
    json st{{"index", s.index}, {"p", s.p.get_str()}, {"A", set_json(s.instance.a, s.instance.ground)},
            {"B", set_json(s.instance.b, s.instance.ground)}};
    if (i < stage_files.size()) st["certificate"] = stage_files[i];
    if (i < stage_digests.size()) st["sha256"] = stage_digests[i];
    stages.push_back(st);
  }
  doc["stages"] = stages;
  doc["manifest"] = manifest_json(manifest);
  return canonical_dump(doc);
}

std::string save_weak_search(const ProductInstance& inst, const WeakSearchResult& result, const RunManifest& manifest) {
  json doc = header("weak-search");
  json ids = json::array();
  for (const auto& [id, set] : inst.family) ids.push_back(id);
  doc["family"] = ids;
  json findings = json::array();
  for (const auto& f : result.findings) findings.push_back({{"type", to_string(f.kind)}, {"r", f.r}, {"weights", f.weights}});
  doc["findings"] = findings;
  doc["exact_partition"] = result.exact_partition;
  doc["vectors"] = result.vectors;
  doc["manifest"] = manifest_json(manifest);
  return canonical_dump(doc);
}

std::string save_cover_result(const LatticeSearchResult& result, const Poset& poset, int n, const RunManifest& manifest) {
  json doc = header("cover-result");
  doc["poset"] = poset_json(poset);
  doc["n"] = n;
  doc["status"] = to_string(result.status);
  doc["copies"] = result.copies;
  doc["count"] = result.count;
  doc["nodes"] = result.nodes;
  json sols = json::array();
  for (const auto& p : result.partitions) {
    json tiles = json::array();
    for (const auto& t : p.tiles) {
      json tile = json::array();
      for (auto m : t) tile.push_back(mask_json(m));
      tiles.push_back(tile);
    }
    sols.push_back(tiles);
  }
  doc["solutions"] = sols;
  doc["manifest"] = manifest_json(manifest);
  return canonical_dump(doc);
}

}  // namespace boolpart::io
