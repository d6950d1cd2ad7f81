#include "boolpart/engine.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

namespace boolpart {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out = saturating_mul(out, base);
  return out;
}

std::uint64_t size_of(ElementSet s) { return static_cast<std::uint64_t>(std::popcount(s)); }

// Appends a coordinate with constant value to every tile.
void append_lifted(const std::vector<Tile>& in, ElementSet values, std::vector<Tile>& out) {
  for (int y : set_elements(values)) {
    for (const auto& t : in) {
      Tile lifted = t;
      lifted.fixed.push_back(y);
      out.push_back(std::move(lifted));
    }
  }
}

// Inserts a coordinate with constant value at position `pos`.
Tile inserted(Tile t, std::size_t pos, int value) {
  t.fixed.insert(t.fixed.begin() + static_cast<std::ptrdiff_t>(pos), value);
  if (t.host >= pos) ++t.host;
  return t;
}

// One tile of `member` hosted at `host` for every cell of `box`, where `box`
// ranges over all coordinates except the host.
void tiles_over(const Box& box, std::uint32_t member, std::size_t host, std::vector<Tile>& out) {
  for_each_cell(box, [&](std::span<const int> cell) {
    Tile t;
    t.member = member;
    t.host = static_cast<std::uint32_t>(host);
    t.fixed.assign(cell.begin(), cell.end());
    t.fixed.insert(t.fixed.begin() + static_cast<std::ptrdiff_t>(host), 0);
    out.push_back(std::move(t));
  });
}

Region unite(Region r, const Box& b) {
  r.append(Region::of(b).minus(r));
  return r;
}

Box concat(Box a, const Box& b) {
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  return a;
}

void check_index_set(const std::vector<int>& xs, int lo, int hi, const char* name) {
  std::set<int> seen;
  for (int x : xs) {
    if (x < lo || x > hi)
      throw InvalidArgument(std::string(name) + " index " + std::to_string(x) + " outside " + std::to_string(lo) +
                            ".." + std::to_string(hi));
    if (!seen.insert(x).second) throw InvalidArgument(std::string(name) + " has repeated index " + std::to_string(x));
  }
}

}  // namespace

struct ProductEngine::Cache {
  std::map<std::pair<int, int>, PartitionCertificate> onecorner;
  std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, PartitionCertificate> changes;
  std::map<std::pair<int, int>, PartitionCertificate> manychoices;
  std::map<std::vector<int>, PartitionCertificate> main_slices;
};

ProductEngine::ProductEngine(ProductInstance instance, Limits limits)
    : inst_(std::move(instance)), limits_(limits), cache_(std::make_shared<Cache>()) {
  inst_.validate();
  std::map<std::string, ElementSet> table = inst_.family;
  table["A"] = inst_.a;
  table["B"] = inst_.b;
  for (const auto& [id, set] : table) {
    if (id == "A") idx_a_ = static_cast<std::uint32_t>(members_.size());
    if (id == "B") idx_b_ = static_cast<std::uint32_t>(members_.size());
    members_.push_back({id, set});
  }
  s_ = inst_.everything();
  u_ = inst_.u();
  ac_ = inst_.a_comp();
  bc_ = inst_.b_comp();
  ab_ = inst_.a & inst_.b;
}

void ProductEngine::check_budget(std::uint64_t cells) const {
  if (cells > limits_.max_cells)
    throw BudgetExceeded("construction needs " + std::to_string(cells) + " cells, budget is " +
                         std::to_string(limits_.max_cells));
}

Box ProductEngine::corner_box(int i, int d) const {
  if (d < 0 || i < 0 || i > d)
    throw InvalidArgument("corner index " + std::to_string(i) + " outside 0.." + std::to_string(d));
  Box b;
  b.factors.assign(static_cast<std::size_t>(d), ac_);
  if (i >= 1) b.factors[static_cast<std::size_t>(i - 1)] = bc_;
  return b;
}

Box ProductEngine::power_box(int k) const {
  Box b;
  b.factors.assign(static_cast<std::size_t>(k), u_);
  return b;
}

PartitionCertificate ProductEngine::empty_certificate(int dimension) const {
  PartitionCertificate c;
  c.ground = inst_.ground;
  c.members = members_;
  c.dimension = dimension;
  c.region = Region(static_cast<std::size_t>(dimension));
  return c;
}

PartitionCertificate ProductEngine::onecorner_normal(int k, int i) const {
  auto key = std::make_pair(k, i);
  if (auto it = cache_->onecorner.find(key); it != cache_->onecorner.end()) return it->second;

  PartitionCertificate c = empty_certificate(k);
  if (k == 1) {
    ElementSet set = i == 0 ? inst_.a : inst_.b;
    if (set != 0) c.tiles.push_back({i == 0 ? idx_a_ : idx_b_, 0, {0}});
  } else if (k >= 2 && i != k) {
    c = blowup_raw(onecorner_normal(k - 1, i));
  } else if (k >= 2) {
    // Exchanging coordinates 0 and k-1 carries C_{1,k} onto C_{k,k}.
    PartitionCertificate base = onecorner_normal(k, 1);
    base.coordinate_map.resize(static_cast<std::size_t>(k));
    std::iota(base.coordinate_map.begin(), base.coordinate_map.end(), 0);
    std::swap(base.coordinate_map.front(), base.coordinate_map.back());
    c = normalized(std::move(base));
  }
  c.region = Region::of(power_box(k)).minus(corner_box(i, k));
  cache_->onecorner.emplace(key, c);
  return c;
}

PartitionCertificate ProductEngine::onecorner(int k, int i) const {
  if (k < 1) throw InvalidArgument("onecorner needs k >= 1");
  if (i < 0 || i > k) throw InvalidArgument("onecorner index " + std::to_string(i) + " outside 0.." + std::to_string(k));
  check_budget(power(size_of(u_), k));
  if (k >= 2 && i == k) {
    PartitionCertificate c = onecorner_normal(k, 1);
    c.coordinate_map.resize(static_cast<std::size_t>(k));
    std::iota(c.coordinate_map.begin(), c.coordinate_map.end(), 0);
    std::swap(c.coordinate_map.front(), c.coordinate_map.back());
    return c;
  }
  return onecorner_normal(k, i);
}

PartitionCertificate ProductEngine::blowup_raw(const PartitionCertificate& c) const {
  const int k = c.dimension;
  PartitionCertificate out = empty_certificate(k + 1);
  out.region = c.region.times(ac_);
  out.region.append(Region::of(power_box(k)).times(inst_.a));
  append_lifted(c.tiles, ac_, out.tiles);
  if (inst_.a != 0) tiles_over(power_box(k), idx_a_, static_cast<std::size_t>(k), out.tiles);
  return out;
}

PartitionCertificate ProductEngine::modify_raw(const PartitionCertificate& c, int i) const {
  const int k = c.dimension;
  PartitionCertificate out = empty_certificate(k + 1);
  const auto host = static_cast<std::size_t>(k);

  append_lifted(onecorner_normal(k, 0).tiles, bc_, out.tiles);   // Z1
  append_lifted(onecorner_normal(k, i).tiles, ab_, out.tiles);   // Z2
  if (inst_.b != 0) tiles_over(corner_box(i, k), idx_b_, host, out.tiles);  // Z3
  append_lifted(c.tiles, ac_, out.tiles);                        // Z4

  Region x = Region::of(power_box(k)).minus(c.region);
  Region y = unite(x.times(ac_), corner_box(k + 1, k + 1)).minus(corner_box(i, k + 1));
  out.region = Region::of(power_box(k + 1)).minus(y);
  return out;
}

PartitionCertificate ProductEngine::imported(const PartitionCertificate& c) const {
  if (c.ground != inst_.ground) throw InvalidArgument("certificate ground set differs from the instance");
  PartitionCertificate out = normalized(c);
  std::vector<std::uint32_t> remap(out.members.size());
  for (std::size_t m = 0; m < out.members.size(); ++m) {
    auto it = std::find_if(members_.begin(), members_.end(), [&](const Member& x) { return x.id == out.members[m].id; });
    if (it == members_.end() || it->set != out.members[m].set)
      throw InvalidArgument("certificate member '" + out.members[m].id + "' is not a member of the instance");
    remap[m] = static_cast<std::uint32_t>(it - members_.begin());
  }
  for (auto& t : out.tiles) {
    if (t.member >= remap.size()) throw InvalidArgument("tile refers to an undefined member");
    t.member = remap[t.member];
  }
  out.members = members_;
  return out;
}

namespace {

void require_ab_only(const PartitionCertificate& c, std::uint32_t a, std::uint32_t b) {
  for (const auto& t : c.tiles)
    if (t.member != a && t.member != b) throw InvalidArgument("input certificate uses members other than A and B");
}

void require_valid(const PartitionCertificate& c, const ProductInstance& inst, const Limits& limits) {
  auto report = verify_certificate(c, &inst, limits, 1);
  if (!report.ok) throw InvalidArgument("invalid input certificate: " + report.violations.front());
}

}  // namespace

PartitionCertificate ProductEngine::blowup(const PartitionCertificate& c) const {
  PartitionCertificate in = imported(c);
  require_ab_only(in, idx_a_, idx_b_);
  check_budget(power(size_of(u_), in.dimension + 1));
  require_valid(in, inst_, limits_);
  for (const auto& box : in.region.boxes())
    for (auto f : box.factors)
      if (!is_subset_of(f, u_)) throw InvalidArgument("input region is not inside U^k");
  return blowup_raw(in);
}

PartitionCertificate ProductEngine::modify(const PartitionCertificate& c, int i) const {
  PartitionCertificate in = imported(c);
  const int k = in.dimension;
  if (i < 0 || i > k) throw InvalidArgument("modify index " + std::to_string(i) + " outside 0.." + std::to_string(k));
  require_ab_only(in, idx_a_, idx_b_);
  check_budget(power(size_of(u_), k + 1));
  require_valid(in, inst_, limits_);
  for (const auto& box : in.region.boxes())
    for (auto f : box.factors)
      if (!is_subset_of(f, u_)) throw InvalidArgument("input region is not inside U^k");
  if (in.region.intersects(corner_box(i, k)))
    throw InvalidArgument("C_{" + std::to_string(i) + "," + std::to_string(k) + "} is not contained in X");
  return modify_raw(in, i);
}

PartitionCertificate ProductEngine::multiplechanges_raw(int k, int l, const std::vector<int>& I,
                                                        const std::vector<int>& J) const {
  auto key = std::make_tuple(k, l, I, J);
  if (auto it = cache_->changes.find(key); it != cache_->changes.end()) return it->second;
  PartitionCertificate c;
  if (l == 0) {
    c = empty_certificate(k);
  } else if (std::find(J.begin(), J.end(), k + l) != J.end()) {
    const int i_star = I.front();
    std::vector<int> I_rest(I.begin() + 1, I.end());
    std::vector<int> J_rest;
    for (int j : J)
      if (j != k + l) J_rest.push_back(j);
    c = modify_raw(multiplechanges_raw(k, l - 1, I_rest, J_rest), i_star);
  } else {
    c = blowup_raw(multiplechanges_raw(k, l - 1, I, J));
  }
  cache_->changes.emplace(key, c);
  return c;
}

PartitionCertificate ProductEngine::multiplechanges(int k, int l, std::vector<int> I, std::vector<int> J) const {
  if (k < 0 || l < 0) throw InvalidArgument("multiplechanges needs k, l >= 0");
  if (I.size() != J.size())
    throw InvalidArgument("|I| = " + std::to_string(I.size()) + " differs from |J| = " + std::to_string(J.size()));
  check_index_set(I, 0, k, "I");
  check_index_set(J, k + 1, k + l, "J");
  check_budget(power(size_of(u_), k + l));
  std::sort(I.begin(), I.end());
  std::sort(J.begin(), J.end());
  PartitionCertificate c = multiplechanges_raw(k, l, I, J);

  Box lower = power_box(k);
  lower.factors.resize(static_cast<std::size_t>(k + l), ac_);
  Region y = Region::of(lower);
  for (int j : J) y = unite(std::move(y), corner_box(j, k + l));
  for (int i : I) y = y.minus(corner_box(i, k + l));
  c.region = Region::of(power_box(k + l)).minus(y);
  return c;
}

PartitionCertificate ProductEngine::fillin_raw(const std::vector<ElementSet>& sets,
                                               const std::vector<std::uint32_t>& ids) const {
  const int t = static_cast<int>(sets.size());
  if (t == 0) return empty_certificate(1);
  std::vector<ElementSet> head(sets.begin(), sets.end() - 1);
  std::vector<std::uint32_t> head_ids(ids.begin(), ids.end() - 1);
  PartitionCertificate prev = fillin_raw(head, head_ids);
  const ElementSet pt = sets.back();

  PartitionCertificate out = empty_certificate(t + 1);
  append_lifted(prev.tiles, ac_, out.tiles);  // Y1

  Box all = concat(Box{{s_}}, power_box(t - 1));
  Box pt_corner = concat(Box{{pt}}, corner_box(0, t - 1));
  Region y2 = Region::of(all).minus(pt_corner);
  if (inst_.a != 0)
    for (const auto& box : y2.boxes()) tiles_over(box, idx_a_, static_cast<std::size_t>(t), out.tiles);

  Box y3 = corner_box(0, t - 1);
  y3.factors.push_back(ab_);
  if (pt != 0) tiles_over(y3, ids.back(), 0, out.tiles);

  out.region = prev.region.times(ac_);
  out.region.append(y2.times(inst_.a));
  Box y3_cells = pt_corner;
  y3_cells.factors.push_back(ab_);
  out.region.add(y3_cells);
  return out;
}

PartitionCertificate ProductEngine::fillin(const std::vector<std::string>& members) const {
  std::vector<ElementSet> sets;
  std::vector<std::uint32_t> ids;
  for (const auto& id : members) {
    auto it = inst_.family.find(id);
    if (it == inst_.family.end()) throw InvalidArgument("fillin member '" + id + "' is not in F");
    sets.push_back(it->second);
    auto pos = std::find_if(members_.begin(), members_.end(), [&](const Member& m) { return m.id == id; });
    ids.push_back(static_cast<std::uint32_t>(pos - members_.begin()));
  }
  const int t = static_cast<int>(sets.size());
  check_budget(saturating_mul(size_of(s_), power(size_of(u_), t)));
  PartitionCertificate c = fillin_raw(sets, ids);

  Region claim = Region::of(concat(Box{{s_}}, power_box(t)));
  claim = claim.minus(concat(Box{{s_}}, corner_box(0, t)));
  for (int i = 1; i <= t; ++i) claim = claim.minus(concat(Box{{sets[static_cast<std::size_t>(i - 1)]}}, corner_box(i, t)));
  c.region = std::move(claim);
  return c;
}

int ProductEngine::manychoices_dimension(int k_bound) const {
  if (!inst_.r_witness) throw InvalidArgument("instance has no r-partition witness");
  if (k_bound < 1) throw InvalidArgument("manychoices needs k >= 1");
  const long long m = static_cast<long long>(inst_.r_witness->members.size());
  const long long r = inst_.r_witness->r;
  const long long extra = ((k_bound - 1) * m + r - 1) / r;
  const long long l = k_bound + extra;
  if (l > 62) throw BudgetExceeded("manychoices dimension " + std::to_string(l) + " exceeds 62");
  return static_cast<int>(l);
}

PartitionCertificate ProductEngine::manychoices_stored(int k_bound, int l, int t) const {
  auto key = std::make_pair(k_bound, t);
  if (auto it = cache_->manychoices.find(key); it != cache_->manychoices.end()) return it->second;

  const auto& witness = inst_.r_witness->members;
  const int r = inst_.r_witness->r;
  const int m = static_cast<int>(witness.size());
  const int a = (t - 1) / r;
  const int am = a * m;

  // P_1..P_am cycles through the witness; P_0 = S is implicit in fillin.
  std::vector<ElementSet> sets;
  std::vector<std::uint32_t> ids;
  for (int i = 0; i < am; ++i) {
    const auto& id = witness[static_cast<std::size_t>(i % m)];
    sets.push_back(inst_.member(id));
    auto pos = std::find_if(members_.begin(), members_.end(), [&](const Member& x) { return x.id == id; });
    ids.push_back(static_cast<std::uint32_t>(pos - members_.begin()));
  }

  PartitionCertificate out = empty_certificate(l + 1);
  PartitionCertificate x = fillin_raw(sets, ids);
  for (int c = am; c < l; ++c) {
    std::vector<Tile> lifted;
    append_lifted(x.tiles, ac_, lifted);
    x.tiles = std::move(lifted);
  }
  out.tiles = std::move(x.tiles);

  std::vector<int> J;
  for (int j = l - t + 1; j <= l; ++j) J.push_back(j);
  for (int z : set_elements(s_)) {
    std::vector<int> I{0};
    for (int i = 1; i <= am; ++i)
      if (sets[static_cast<std::size_t>(i - 1)] >> z & 1) I.push_back(i);
    const PartitionCertificate& slice = multiplechanges_raw(am, l - am, I, J);
    for (const auto& tile : slice.tiles) out.tiles.push_back(inserted(tile, 0, z));
  }

  Region claim = Region::of(power_box(l));
  for (int j : J) claim = claim.minus(corner_box(j, l));
  out.region = claim.after(s_);
  cache_->manychoices.emplace(key, out);
  return out;
}

PartitionCertificate ProductEngine::manychoices(int k_bound, std::vector<int> J) const {
  const int l = manychoices_dimension(k_bound);
  const int r = inst_.r_witness->r;
  const int t = static_cast<int>(J.size());
  if (t < 1) throw InvalidArgument("manychoices needs at least one index");
  if (t > k_bound) throw InvalidArgument("|J| = " + std::to_string(t) + " exceeds k = " + std::to_string(k_bound));
  if ((t - 1) % r != 0)
    throw InvalidArgument("|J| = " + std::to_string(t) + " is not 1 mod " + std::to_string(r));
  check_index_set(J, 1, l, "J");
  for (const auto& id : inst_.r_witness->members) inst_.member(id);
  check_budget(saturating_mul(size_of(s_), power(size_of(u_), l)));
  std::sort(J.begin(), J.end());

  PartitionCertificate c = manychoices_stored(k_bound, l, t);
  std::vector<int> map{0};
  for (int j = 1; j <= l; ++j)
    if (!std::binary_search(J.begin(), J.end(), j)) map.push_back(j);
  map.insert(map.end(), J.begin(), J.end());
  bool identity = true;
  for (std::size_t c2 = 0; c2 < map.size(); ++c2) identity = identity && map[c2] == static_cast<int>(c2);
  if (!identity) c.coordinate_map = std::move(map);
  return c;
}

std::uint64_t ProductEngine::main_cells() const {
  if (!inst_.mod_witness) throw InvalidArgument("instance has no (1 mod r)-partition witness");
  const int n = manychoices_dimension(static_cast<int>(inst_.mod_witness->members.size()));
  return saturating_mul(size_of(s_) * size_of(s_), power(size_of(u_), n));
}

ProductEngine::MainResult ProductEngine::main() const {
  inst_.validate_witnesses();
  const auto& R = inst_.mod_witness->members;
  const int k = static_cast<int>(R.size());
  const int n = manychoices_dimension(k);
  check_budget(main_cells());

  MainResult result;
  result.n = n;
  PartitionCertificate& out = result.certificate;
  out = empty_certificate(n + 2);
  Box full{{s_, s_}};
  full = concat(full, power_box(n));
  out.region = Region::of(full);

  for (int i = 1; i <= k; ++i) {
    const auto& id = R[static_cast<std::size_t>(i - 1)];
    auto pos = std::find_if(members_.begin(), members_.end(), [&](const Member& x) { return x.id == id; });
    const auto idx = static_cast<std::uint32_t>(pos - members_.begin());
    if (pos->set == 0) continue;
    tiles_over(concat(Box{{s_}}, corner_box(i, n)), idx, 1, out.tiles);
  }

  for (int y : set_elements(s_)) {
    std::vector<int> J;
    for (int j = 1; j <= k; ++j)
      if (inst_.member(R[static_cast<std::size_t>(j - 1)]) >> y & 1) J.push_back(j);
    auto it = cache_->main_slices.find(J);
    if (it == cache_->main_slices.end()) it = cache_->main_slices.emplace(J, normalized(manychoices(k, J))).first;
    for (const auto& tile : it->second.tiles) out.tiles.push_back(inserted(tile, 1, y));
  }
  return result;
}

PartitionCertificate buildbigger(const PartitionCertificate& cP_in, const PartitionCertificate& cQ_in,
                                 const Limits& limits) {
  const PartitionCertificate cP = normalized(cP_in);
  const PartitionCertificate cQ = normalized(cQ_in);
  if (cP.ground != cQ.ground) throw InvalidArgument("buildbigger inputs have different ground sets");
  const std::size_t ground = cP.ground.size();
  if (ground == 0 || ground > kMaxGroundSize) throw InvalidArgument("ground set size outside 1..64");
  const ElementSet s = ground >= 64 ? ~ElementSet{0} : (ElementSet{1} << ground) - 1;
  const int p = cP.dimension;
  const int q = cQ.dimension - 2;
  if (p < 1) throw InvalidArgument("cP must have dimension >= 1");
  if (q < 1) throw InvalidArgument("cQ must have dimension >= 3");

  const std::uint64_t out_cells = power(size_of(s), p * q + 2);
  if (p * q + 2 > 64 || out_cells > limits.max_cells)
    throw BudgetExceeded("S^" + std::to_string(p * q + 2) + " exceeds the cell budget of " +
                         std::to_string(limits.max_cells));

  ElementSet a = 0;
  bool has_a = false;
  if (auto idx = cP.member_index("A")) {
    a = cP.members[*idx].set;
    has_a = true;
  }

  // Inputs must be exact partitions of S^p and S^2 x A^q.
  Box sp;
  sp.factors.assign(static_cast<std::size_t>(p), s);
  if (cP.region.cell_count() != sp.cell_count() || !Region::of(sp).minus(cP.region).empty())
    throw InvalidArgument("cP does not cover S^" + std::to_string(p));
  Box sq{{s, s}};
  sq.factors.resize(static_cast<std::size_t>(q + 2), a);
  if (has_a) {
    for (const auto& box : cQ.region.boxes())
      if (!Region::of(box).minus(sq).empty()) throw InvalidArgument("cQ region does not match S^2 x A^q for cP's A");
    if (cQ.region.cell_count() != sq.cell_count()) throw InvalidArgument("cQ region does not match S^2 x A^q for cP's A");
  }
  for (const auto* c : {&cP, &cQ}) {
    auto report = verify_certificate(*c, nullptr, limits, 1);
    if (!report.ok) throw InvalidArgument("invalid input certificate: " + report.violations.front());
  }

  // Output member table: cP's ordinary members plus cQ's members.
  std::map<std::string, ElementSet> table;
  auto add_member = [&](const Member& m) {
    auto [pos, inserted_new] = table.emplace(m.id, m.set);
    if (!inserted_new && pos->second != m.set) throw InvalidArgument("member '" + m.id + "' differs between inputs");
  };
  for (const auto& m : cP.members)
    if (m.id != "A") add_member(m);
  for (const auto& m : cQ.members) add_member(m);
  PartitionCertificate out;
  out.ground = cP.ground;
  out.dimension = p * q + 2;
  std::map<std::string, std::uint32_t> index;
  for (const auto& [id, set] : table) {
    index[id] = static_cast<std::uint32_t>(out.members.size());
    out.members.push_back({id, set});
  }
  Box full;
  full.factors.assign(static_cast<std::size_t>(out.dimension), s);
  out.region = Region::of(full);

  std::vector<std::uint32_t> p_remap(cP.members.size()), q_remap(cQ.members.size());
  for (std::size_t m = 0; m < cP.members.size(); ++m)
    if (cP.members[m].id != "A") p_remap[m] = index.at(cP.members[m].id);
  for (std::size_t m = 0; m < cQ.members.size(); ++m) q_remap[m] = index.at(cQ.members[m].id);

  const auto block = [p](int b, std::uint32_t host) { return static_cast<std::size_t>(2 + b * p) + host; };
  const std::size_t T = cP.tiles.size();
  std::vector<std::size_t> choice(static_cast<std::size_t>(q), 0);
  std::vector<int> base(static_cast<std::size_t>(out.dimension), 0);
  while (true) {
    for (int b = 0; b < q; ++b) {
      const Tile& z = cP.tiles[choice[static_cast<std::size_t>(b)]];
      for (int c = 0; c < p; ++c) base[static_cast<std::size_t>(2 + b * p + c)] = z.fixed[static_cast<std::size_t>(c)];
    }
    int first_ordinary = -1;
    for (int b = 0; b < q && first_ordinary < 0; ++b)
      if (cP.members[cP.tiles[choice[static_cast<std::size_t>(b)]].member].id != "A") first_ordinary = b;

    if (first_ordinary < 0) {
      // S^2 x Z_1 x ... x Z_q is a clone of S^2 x A^q.
      for (const Tile& t : cQ.tiles) {
        Tile o;
        o.member = q_remap[t.member];
        o.fixed = base;
        o.fixed[0] = t.fixed[0];
        o.fixed[1] = t.fixed[1];
        for (int b = 0; b < q; ++b) {
          const Tile& z = cP.tiles[choice[static_cast<std::size_t>(b)]];
          o.fixed[block(b, z.host)] = t.fixed[static_cast<std::size_t>(2 + b)];
        }
        if (t.host < 2) {
          o.host = t.host;
        } else {
          const int b = static_cast<int>(t.host) - 2;
          o.host = static_cast<std::uint32_t>(block(b, cP.tiles[choice[static_cast<std::size_t>(b)]].host));
        }
        o.fixed[o.host] = 0;
        out.tiles.push_back(std::move(o));
      }
    } else {
      // One clone of Z_j's member per point of the remaining factors.
      const Tile& zj = cP.tiles[choice[static_cast<std::size_t>(first_ordinary)]];
      Box rest{{s, s}};
      std::vector<std::size_t> positions{0, 1};
      for (int b = 0; b < q; ++b) {
        if (b == first_ordinary) continue;
        const Tile& z = cP.tiles[choice[static_cast<std::size_t>(b)]];
        rest.factors.push_back(cP.members[z.member].set);
        positions.push_back(block(b, z.host));
      }
      const auto host = static_cast<std::uint32_t>(block(first_ordinary, zj.host));
      const std::uint32_t member = p_remap[zj.member];
      for_each_cell(rest, [&](std::span<const int> cell) {
        Tile o;
        o.member = member;
        o.host = host;
        o.fixed = base;
        for (std::size_t x = 0; x < cell.size(); ++x) o.fixed[positions[x]] = cell[x];
        o.fixed[host] = 0;
        out.tiles.push_back(std::move(o));
      });
    }

    int b = q - 1;
    while (b >= 0 && ++choice[static_cast<std::size_t>(b)] == T) choice[static_cast<std::size_t>(b--)] = 0;
    if (b < 0) break;
  }
  return out;
}

}  // namespace boolpart
