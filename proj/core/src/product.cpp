#include "boolpart/product.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <unordered_map>

namespace boolpart {

ElementSet ProductInstance::everything() const {
  return ground.size() >= 64 ? ~ElementSet{0} : (ElementSet{1} << ground.size()) - 1;
}

ElementSet ProductInstance::member(const std::string& id) const {
  auto it = family.find(id);
  if (it == family.end()) throw ReferenceError("family", "undefined member id '" + id + "'");
  return it->second;
}

void ProductInstance::validate() const {
  if (ground.empty()) throw InvalidArgument("ground set is empty");
  if (ground.size() > kMaxGroundSize) throw InvalidArgument("ground set larger than 64 elements");
  std::set<std::string> labels(ground.begin(), ground.end());
  if (labels.size() != ground.size()) throw InvalidArgument("duplicate ground labels");
  const ElementSet all = everything();
  for (const auto& [id, set] : family) {
    if (id == "A" || id == "B") throw InvalidArgument("family id '" + id + "' is reserved");
    if (!is_subset_of(set, all)) throw InvalidArgument("member '" + id + "' is not a subset of the ground set");
  }
  if ((a & ~all) != 0 || (b & ~all) != 0) throw InvalidArgument("A and B must be subsets of the ground set");
}

std::vector<int> witness_multiplicities(const ProductInstance& inst, std::span<const std::string> members) {
  std::vector<int> mult(inst.ground_size(), 0);
  for (const auto& id : members)
    for (int e : set_elements(inst.member(id))) ++mult[static_cast<std::size_t>(e)];
  return mult;
}

void ProductInstance::validate_witnesses() const {
  validate();
  if (!r_witness) throw InvalidArgument("missing r-partition witness");
  if (!mod_witness) throw InvalidArgument("missing (1 mod r)-partition witness");
  const int r = r_witness->r;
  if (r < 1) throw InvalidArgument("witness r must be positive");
  if (r_witness->members.empty()) throw InvalidArgument("r-partition witness is empty");
  auto rm = witness_multiplicities(*this, r_witness->members);
  for (std::size_t x = 0; x < rm.size(); ++x)
    if (rm[x] != r)
      throw InvalidArgument("r-partition witness: element '" + ground[x] + "' has multiplicity " +
                            std::to_string(rm[x]) + ", expected " + std::to_string(r));
  auto mm = witness_multiplicities(*this, mod_witness->members);
  for (std::size_t x = 0; x < mm.size(); ++x)
    if (mm[x] < 1 || (mm[x] - 1) % r != 0)
      throw InvalidArgument("(1 mod r)-partition witness: element '" + ground[x] + "' has multiplicity " +
                            std::to_string(mm[x]) + ", not 1 mod " + std::to_string(r));
}

std::optional<std::uint32_t> PartitionCertificate::member_index(const std::string& id) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].id == id) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint64_t PartitionCertificate::tile_cells(const Tile& t) const {
  return static_cast<std::uint64_t>(std::popcount(members.at(t.member).set));
}

PartitionCertificate normalized(PartitionCertificate cert) {
  if (cert.coordinate_map.empty()) return cert;
  const auto& map = cert.coordinate_map;
  Region region(cert.region.dimension());
  for (const auto& box : cert.region.boxes()) {
    Box moved;
    moved.factors.resize(box.dimension());
    for (std::size_t c = 0; c < box.dimension(); ++c) moved.factors[static_cast<std::size_t>(map[c])] = box.factors[c];
    region.add(std::move(moved));
  }
  cert.region = std::move(region);
  for (auto& tile : cert.tiles) {
    std::vector<int> fixed(tile.fixed.size(), 0);
    for (std::size_t c = 0; c < fixed.size(); ++c) fixed[static_cast<std::size_t>(map[c])] = tile.fixed[c];
    tile.host = static_cast<std::uint32_t>(map[tile.host]);
    fixed[tile.host] = 0;
    tile.fixed = std::move(fixed);
  }
  cert.coordinate_map.clear();
  return cert;
}

void canonicalize(PartitionCertificate& cert) {
  std::vector<std::size_t> order(cert.members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cert.members[x].id < cert.members[y].id; });
  std::vector<std::uint32_t> remap(order.size());
  std::vector<Member> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<std::uint32_t>(i);
    sorted.push_back(cert.members[order[i]]);
  }
  cert.members = std::move(sorted);
  for (auto& t : cert.tiles) t.member = remap.at(t.member);
  cert.region.sort();
  std::sort(cert.tiles.begin(), cert.tiles.end());
}

PartitionCertificate relabel(PartitionCertificate cert, const std::map<std::string, Member>& renames) {
  std::map<std::string, ElementSet> table;
  std::vector<std::string> new_ids;
  for (const auto& m : cert.members) {
    auto it = renames.find(m.id);
    Member next = it == renames.end() ? m : it->second;
    auto [pos, inserted] = table.emplace(next.id, next.set);
    if (!inserted && pos->second != next.set)
      throw InvalidArgument("relabel merges member '" + next.id + "' with different sets");
    new_ids.push_back(next.id);
  }
  std::vector<Member> members;
  std::map<std::string, std::uint32_t> index;
  for (const auto& [id, set] : table) {
    index[id] = static_cast<std::uint32_t>(members.size());
    members.push_back({id, set});
  }
  for (auto& t : cert.tiles) t.member = index.at(new_ids.at(t.member));
  cert.members = std::move(members);
  return cert;
}

namespace {

struct Verifier {
  const PartitionCertificate& cert;
  std::size_t max_reported;
  CertificateReport report;

  void fail(std::string msg) {
    report.ok = false;
    if (report.violations.size() < max_reported) report.violations.push_back(std::move(msg));
  }

  std::string label(std::span<const int> cell) const {
    std::string s = "(";
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (i) s += ',';
      int v = cell[i];
      s += v >= 0 && static_cast<std::size_t>(v) < cert.ground.size() ? cert.ground[static_cast<std::size_t>(v)]
                                                                        : "#" + std::to_string(v);
    }
    return s + ")";
  }
};

// Cell identity packed into a machine word when it fits, a byte string otherwise.
template <class Key>
Key encode(std::span<const int> cell, int bits);

template <>
std::uint64_t encode<std::uint64_t>(std::span<const int> cell, int bits) {
  std::uint64_t k = 0;
  for (int v : cell) k = (k << bits) | static_cast<std::uint64_t>(v);
  return k;
}

template <>
std::string encode<std::string>(std::span<const int> cell, int) {
  std::string k(cell.size(), '\0');
  for (std::size_t i = 0; i < cell.size(); ++i) k[i] = static_cast<char>(cell[i]);
  return k;
}

template <class Key>
void check_cells(Verifier& v, int bits) {
  const auto& cert = v.cert;
  const std::size_t n = static_cast<std::size_t>(cert.dimension);
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const std::vector<int>& map = cert.coordinate_map.empty() ? identity : cert.coordinate_map;
  std::vector<int> actual(n);
  auto to_actual = [&](std::span<const int> stored) {
    for (std::size_t c = 0; c < n; ++c) actual[static_cast<std::size_t>(map[c])] = stored[c];
    return std::span<const int>(actual);
  };

  // -1 = in region, uncovered; otherwise index of the covering tile.
  std::unordered_map<Key, std::int64_t> cells;
  cells.reserve(static_cast<std::size_t>(v.report.region_cells));
  for (const auto& box : cert.region.boxes()) {
    for_each_cell(box, [&](std::span<const int> stored) {
      auto cell = to_actual(stored);
      if (!cells.emplace(encode<Key>(cell, bits), -1).second) v.fail("region boxes overlap at cell " + v.label(cell));
    });
  }

  std::vector<int> stored;
  for (std::size_t i = 0; i < cert.tiles.size(); ++i) {
    const Tile& t = cert.tiles[i];
    stored = t.fixed;
    for (int value : set_elements(cert.members[t.member].set)) {
      stored[t.host] = value;
      auto cell = to_actual(stored);
      auto it = cells.find(encode<Key>(cell, bits));
      if (it == cells.end()) {
        v.fail("tile #" + std::to_string(i) + " covers " + v.label(cell) + " outside the region");
      } else if (it->second >= 0) {
        v.fail("overlap at cell " + v.label(cell) + " between tiles #" + std::to_string(it->second) + " and #" +
               std::to_string(i));
      } else {
        it->second = static_cast<std::int64_t>(i);
        ++v.report.covered_cells;
      }
    }
  }

  if (v.report.covered_cells != v.report.region_cells) {
    for (const auto& box : cert.region.boxes()) {
      for_each_cell(box, [&](std::span<const int> s) {
        auto cell = to_actual(s);
        auto it = cells.find(encode<Key>(cell, bits));
        if (it != cells.end() && it->second < 0) v.fail("uncovered cell " + v.label(cell));
      });
    }
  }
}

}  // namespace

CertificateReport verify_certificate(const PartitionCertificate& cert, const ProductInstance* instance,
                                     const Limits& limits, std::size_t max_reported) {
  Verifier v{cert, max_reported, {}};
  const std::size_t ground = cert.ground.size();
  if (ground == 0 || ground > kMaxGroundSize) {
    v.fail("ground set size " + std::to_string(ground) + " outside 1..64");
    return v.report;
  }
  const ElementSet all = ground >= 64 ? ~ElementSet{0} : (ElementSet{1} << ground) - 1;
  const std::size_t n = static_cast<std::size_t>(cert.dimension);
  if (cert.dimension < 0 || cert.region.dimension() != n) {
    v.fail("region dimension does not match certificate dimension");
    return v.report;
  }
  if (!cert.coordinate_map.empty()) {
    std::vector<int> sorted = cert.coordinate_map;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == n;
    for (std::size_t i = 0; perm && i < n; ++i) perm = sorted[i] == static_cast<int>(i);
    if (!perm) {
      v.fail("coordinate map is not a permutation of 0.." + std::to_string(n ? n - 1 : 0));
      return v.report;
    }
  }
  for (const auto& box : cert.region.boxes())
    for (auto f : box.factors)
      if (!is_subset_of(f, all)) {
        v.fail("region box factor outside the ground set");
        return v.report;
      }

  if (instance) {
    for (const auto& m : cert.members) {
      std::optional<ElementSet> expected;
      if (m.id == "A") expected = instance->a;
      else if (m.id == "B") expected = instance->b;
      else if (auto it = instance->family.find(m.id); it != instance->family.end()) expected = it->second;
      if (!expected) v.fail("invalid clone: member '" + m.id + "' is not in F u {A, B}");
      else if (*expected != m.set) v.fail("invalid clone: member '" + m.id + "' differs from the instance's set");
    }
  }

  bool tiles_ok = true;
  for (std::size_t i = 0; i < cert.tiles.size(); ++i) {
    const Tile& t = cert.tiles[i];
    std::string why;
    if (t.member >= cert.members.size()) why = "undefined member";
    else if (cert.members[t.member].set == 0) why = "empty member '" + cert.members[t.member].id + "'";
    else if (!is_subset_of(cert.members[t.member].set, all)) why = "member outside the ground set";
    else if (t.host >= n) why = "host coordinate out of range";
    else if (t.fixed.size() != n) why = "fixed assignment has wrong length";
    else {
      for (std::size_t c = 0; c < n && why.empty(); ++c) {
        if (c == t.host) {
          if (t.fixed[c] != 0) why = "host slot of the fixed assignment is not 0";
        } else if (t.fixed[c] < 0 || static_cast<std::size_t>(t.fixed[c]) >= ground) {
          why = "fixed coordinate " + std::to_string(c) + " outside the ground set";
        }
      }
    }
    if (!why.empty()) {
      v.fail("invalid clone: tile #" + std::to_string(i) + ": " + why);
      tiles_ok = false;
    }
  }
  if (!tiles_ok) return v.report;

  v.report.region_cells = cert.region.cell_count();
  if (v.report.region_cells > limits.max_cells)
    throw BudgetExceeded("region has " + std::to_string(v.report.region_cells) + " cells, budget is " +
                         std::to_string(limits.max_cells));

  const int bits = std::max(1, static_cast<int>(std::bit_width(ground - 1)));
  if (static_cast<std::size_t>(bits) * n <= 64)
    check_cells<std::uint64_t>(v, bits);
  else
    check_cells<std::string>(v, bits);
  return v.report;
}

}  // namespace boolpart
