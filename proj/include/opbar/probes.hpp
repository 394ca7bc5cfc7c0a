#pragma once

#include "opbar/barpoint.hpp"
#include "opbar/cooperad.hpp"
#include "opbar/equivalence.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace opbar {

struct ProbeReport {
  bool pass = false;
  std::string name;
  std::string detail;
};

/// Weight that depends affinely on the degeneration parameter.
struct AffineRat {
  Rat c0, c1;
  Rat at(const Rat& eps) const { return c0 + c1 * eps; }
  static AffineRat constant(Rat c) { return {std::move(c), Rat(0)}; }
};

/// A family of inputs parametrized by eps, degenerating at eps = 0: a raw
/// point with affine weights, optionally paired with a word factor (then
/// the tree data describes the point factor over the base operad and the
/// input is the coinvariant pair).
struct DegenerationPath {
  std::string name;
  Tree tree;
  std::vector<Elem> labels;
  std::map<EdgeId, AffineRat> weights;
  bool has_word = false;
  std::vector<AffineRat> word_weights;
  std::vector<int> word_labels;
  int word_right = 0;
};

RawBarPoint path_point(const DegenerationPath& path, const Rat& eps);
/// Checks that every sample eps in {2^-1 .. 2^-k} and the eps = 0 endpoint
/// yield valid weightings.
std::vector<std::string> validate_path(const Operad& q, const DegenerationPath& path, int k);

struct MapUnderProbe {
  enum Kind { Normalize, Sigma, Pi, Homotopy, Decompose } kind = Normalize;
  Rat s;
  DecompositionRequest req;
  static MapUnderProbe normalize_map() { return {Normalize, Rat(0), {}}; }
  static MapUnderProbe sigma_map() { return {Sigma, Rat(0), {}}; }
  static MapUnderProbe pi_map() { return {Pi, Rat(0), {}}; }
  static MapUnderProbe homotopy_map(Rat s) { return {Homotopy, std::move(s), {}}; }
  static MapUnderProbe decompose_map(DecompositionRequest r) {
    return {Decompose, Rat(0), std::move(r)};
  }
  std::string str() const;
};

/// Exact discretized continuity check: the map is evaluated on the samples
/// eps = 2^-1 .. 2^-k; past the stabilization index the canonical shape and
/// labels must freeze and every weight must follow one rational function of
/// degree at most (1,1), whose value at 0 must reproduce the map's value on
/// the degenerate point. No tolerances anywhere.
ProbeReport continuity_probe(const SemidirectOperad& q, const MapUnderProbe& f,
                             const DegenerationPath& path, int k = 10, int stable_from = 3);

/// Continuity of the homotopy in its time parameter as s approaches a
/// vertex crossing from below.
ProbeReport h_crossing_probe(const SemidirectOperad& q, const BarPoint& p, const Rat& s_star,
                             int k = 10, int stable_from = 3);

/// Normalization under `orders` random rule orders against the default.
ProbeReport confluence_probe(const Operad& q, const RawBarPoint& raw, int orders,
                             std::uint64_t seed);

/// Image of the reduced bar construction inside the full one: membership is
/// "no unary vertices in canonical form"; sampled stable points must land
/// in the image, points with a surviving unary label outside it, and the
/// degrafting structure maps must preserve membership.
ProbeReport reduced_membership_probe(const SemidirectOperad& q, int arity, int samples,
                                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// Seeded corpora

/// Deterministic random streams over one semidirect pair. Identical seeds
/// give identical streams; sizes stay within 6 leaves, 8 vertices, and
/// denominators of 64.
class Generator {
 public:
  Generator(std::shared_ptr<const SemidirectOperad> q, std::uint64_t seed);

  const SemidirectOperad& sdp() const { return *q_; }
  const Operad& base() const { return *q_->base_operad(); }
  const GroupPtr& grp() const { return q_->twist_group(); }

  std::uint64_t bits();
  int u(int m);  // uniform in [0, m)

  /// Random stable tree on labels 1..n (n >= 2), at most 8 vertices.
  Tree stable_tree(int n);
  /// Canonical point over the base operad: stable tree, positive weights.
  BarPoint psi_point(int n);
  /// Canonical word over the twist group.
  BarWord word(WordVariant v, int max_labels = 3);
  EquivariantPoint equivariant(int n);
  /// Raw point over the semidirect product with unary chains; degenerate
  /// streams mix in zero weights, identity labels and an occasional
  /// basepoint label.
  RawBarPoint raw_point(int n, bool degenerate);
  /// Canonical non-base point over the semidirect product.
  BarPoint point(int n);

  /// Random non-base element of the base operad at the given arity.
  Elem base_elem(int arity);

 private:
  Rat rnd_alt(int lo64, int hi64);
  std::shared_ptr<const SemidirectOperad> q_;
  std::mt19937_64 rng_;
};

/// One continuity case per degeneration class applicable to the map, on
/// deterministic base shapes with generator-chosen decorations. Covers the
/// branch-to-zero classes, the in-branch edge classes, the edges below
/// (least) stable vertices, and for sigma the word-edge classes.
struct ProbeCase {
  MapUnderProbe map;
  DegenerationPath path;
};
std::vector<ProbeCase> continuity_suite(Generator& gen);

}  // namespace opbar
