#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "boolpart/product.hpp"

namespace boolpart {

/// Product-system constructions over one instance. Every certificate shares
/// the member table F u {A, B} (sorted by id) and uses coordinates as follows:
/// U-coordinates of U^k are 0..k-1; in S x U^t the S
/// factor is coordinate 0.
///
/// Indices i of corner sets C_{i,d} are 0..d with 0 meaning Ac^d.
class ProductEngine {
 public:
  explicit ProductEngine(ProductInstance instance, Limits limits = {});

  const ProductInstance& instance() const { return inst_; }
  const std::vector<Member>& members() const { return members_; }

  Box corner_box(int i, int d) const;
  /// U^k as a box.
  Box power_box(int k) const;

  /// U^k \ C_{i,k} into copies of A and B. k = 0 yields the empty region of
  /// dimension 0. For i = k >= 2 the certificate is the i = 1 construction
  /// with coordinates 0 and k-1 exchanged through the coordinate map.
  PartitionCertificate onecorner(int k, int i) const;

  /// Input covers U^k \ X with A and B tiles; output covers U^{k+1} \ (X x Ac).
  PartitionCertificate blowup(const PartitionCertificate& c) const;

  /// Input covers U^k \ X with C_{i,k} inside X; output covers U^{k+1} \ Y,
  /// Y = (X x Ac) u C_{k+1,k+1} \ C_{i,k+1}.
  PartitionCertificate modify(const PartitionCertificate& c, int i) const;

  /// U^{k+l} \ Y, Y = (U^k x Ac^l) u U_{j in J} C_{j,k+l} \ U_{i in I} C_{i,k+l}.
  /// I within 0..k, J within k+1..k+l, |I| = |J|.
  PartitionCertificate multiplechanges(int k, int l, std::vector<int> I, std::vector<int> J) const;

  /// (S x U^t) \ (Q_0 u ... u Q_t) for the listed family ids P_1..P_t.
  PartitionCertificate fillin(const std::vector<std::string>& members) const;

  /// Smallest l >= k + (k-1) m / r for the r-partition witness (m members).
  int manychoices_dimension(int k_bound) const;

  /// S x (U^l \ U_{j in J} C_{j,l}) with l = manychoices_dimension(k_bound),
  /// J within 1..l, |J| <= k_bound and |J| = 1 mod r. The construction places
  /// J on the last |J| coordinates; the coordinate map records the placement.
  PartitionCertificate manychoices(int k_bound, std::vector<int> J) const;

  struct MainResult {
    int n = 0;
    PartitionCertificate certificate;
  };
  /// S^2 x U^n with n = manychoices_dimension(|mod witness|). Coordinate 1 is
  /// the slice coordinate y, coordinates 2.. are the U factors.
  MainResult main() const;

  /// Cell count of S^2 x U^n without building anything.
  std::uint64_t main_cells() const;

 private:
  struct Cache;

  PartitionCertificate empty_certificate(int dimension) const;
  PartitionCertificate onecorner_normal(int k, int i) const;
  PartitionCertificate blowup_raw(const PartitionCertificate& c) const;
  PartitionCertificate modify_raw(const PartitionCertificate& c, int i) const;
  PartitionCertificate multiplechanges_raw(int k, int l, const std::vector<int>& I, const std::vector<int>& J) const;
  PartitionCertificate fillin_raw(const std::vector<ElementSet>& sets, const std::vector<std::uint32_t>& ids) const;
  PartitionCertificate manychoices_stored(int k_bound, int l, int t) const;
  PartitionCertificate imported(const PartitionCertificate& c) const;
  void check_budget(std::uint64_t cells) const;

  ProductInstance inst_;
  Limits limits_;
  std::vector<Member> members_;
  std::uint32_t idx_a_ = 0;
  std::uint32_t idx_b_ = 0;
  ElementSet u_ = 0, ac_ = 0, bc_ = 0, ab_ = 0, s_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// Combines a partition of S^p over F u {A} (special tiles have member id
/// "A") with a partition of S^2 x A^q into S^{pq+2}. Tiles of cQ are copied
/// with their own member ids; the output member table is cP's non-"A" members
/// plus cQ's members.
PartitionCertificate buildbigger(const PartitionCertificate& cP, const PartitionCertificate& cQ,
                                 const Limits& limits = {});

}  // namespace boolpart
