#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pkdyn/multipoly.hpp"

namespace pkdyn {

// Ambient space: a product of projective factors; factors = {k} for P^k,
// {k,k} for P^k x P^k, ... Coordinates are concatenated block by block.
struct Ambient {
  std::vector<int> factors;

  Ambient() = default;
  Ambient(std::initializer_list<int> f) : factors(f) {}
  explicit Ambient(std::vector<int> f) : factors(std::move(f)) {}

  int blocks() const { return (int)factors.size(); }
  int nvars() const;
  int block_offset(int b) const;
  int block_size(int b) const { return factors[b] + 1; }
  bool single() const { return factors.size() == 1; }
  std::vector<std::string> var_names() const;  // x0.., y0.., z0.. per block
  bool operator==(const Ambient&) const = default;
};

class ProjectivePoint {
public:
  ProjectivePoint(Ambient amb, std::vector<Scalar> coords);  // canonicalizes

  const Ambient& ambient() const { return amb_; }
  const std::vector<Scalar>& coords() const { return x_; }
  bool exact() const;

  bool equals(const ProjectivePoint& o) const;             // exact comparison
  double distance(const ProjectivePoint& o) const;         // max coordinate gap in canonical form
  std::string str() const;

private:
  Ambient amb_;
  std::vector<Scalar> x_;
  void canonicalize();
};

struct MpMapData;  // high-precision coefficient side channel (numeric P^2 engine)

// Rational self-map in homogeneous coordinates; components grouped per
// target block, all in the source variable set.
struct HomogeneousMap {
  Ambient source;
  Ambient target;
  std::vector<std::vector<MultiPoly>> blocks;

  // optional extras used by specific constructions
  std::shared_ptr<HomogeneousMap> inverse;       // known birational inverse
  std::shared_ptr<MpMapData> mp;                 // refined coefficients for numeric degree growth

  bool exact() const;
  bool self_map() const { return source == target; }
  int degree() const;  // single-factor ambient
  std::vector<std::vector<int>> multidegree() const;  // [target block][source block]
  void validate() const;
};

HomogeneousMap cremona(int k);
HomogeneousMap cremona_product(int k, int d);
HomogeneousMap identity_map(const Ambient& amb);
bool is_identity(const HomogeneousMap& f);

// nullopt = Indeterminate (all components of some block vanish)
std::optional<ProjectivePoint> evaluate(const HomogeneousMap& f, const ProjectivePoint& p);

HomogeneousMap compose_reduce(const HomogeneousMap& f, const HomogeneousMap& g);

MultiPoly jacobian_det(const HomogeneousMap& f);

struct LinearFactors {
  std::vector<std::pair<MultiPoly, int>> factors;  // (monic linear form, multiplicity)
  MultiPoly cofactor;                              // remaining non-linear part (with constant)
};
LinearFactors linear_factors(const MultiPoly& p);

// nullopt = NotContracted
std::optional<ProjectivePoint> contracts_to(const HomogeneousMap& f, const MultiPoly& hyperplane,
                                            int samples, double tol = 1e-9);

HomogeneousMap map_from_components(const Ambient& amb, const std::vector<std::vector<std::string>>& comps);

}  // namespace pkdyn
