#pragma once

// The moment map Phi(gH) = proj_k Ad(g)(xi + zeta) of a standard
// representation, closed-form orbit curves through the base point, the part
// of the image inside t that the root data certifies, and support tests.

#include <optional>
#include <string>
#include <vector>

#include "ktypes/fiber.hpp"
#include "ktypes/params.hpp"

namespace ktypes {

struct OrbitPoint {
  MatC g;
  QVec base;  // xi + zeta on the basis of g
  VecR phi;   // k-coordinates
};

// Built once per parameter set; cheap to copy.
struct MomentSetup {
  StandardRepParams params;
  DerivedWeights weights;
  bool singular = false;  // xi singular: the deformed map is used
  QVec mu;                // xi + zeta (exact)
  QVec mu_tilde;          // xi_tilde + zeta (exact), the regular base of the orbit
  MomentMap map;
};

MomentSetup make_moment_setup(StandardRepParams p);

// Phi at g; SingularXi when xi + zeta is singular.
VecR moment_eval(const MomentSetup& s, const MatC& g);
OrbitPoint orbit_point(const MomentSetup& s, const MatC& g);

// Element of t (basis of g) to T-weight coordinates: w_j = -B(x, c_j).
QVec t_weight(const GroupData& g, const QVec& x);

// Closed form of Ad(exp(t(Xp + Xm))) mu for Xp in g_alpha, Xm in g_-alpha,
// c = <alpha, [Xp, Xm]> != 0 (complex square roots). Coordinates in g^C.
VecC orbit_curve_complex(const GroupData& g, const CartanData& h, const QVec& alpha, const CVec& Xp,
                         const CVec& Xm, const CVec& mu, double t);
// Real version; NonpositivePairing unless <alpha, [Xp, Xm]> > 0.
VecR orbit_curve(const MomentSetup& s, const QVec& alpha, const CVec& Xp, const CVec& Xm, double t);

enum class Interval { FullLine, NonnegRay, NonposRay };
const char* to_string(Interval i) noexcept;

struct Generator {
  std::string source;  // "ray" (imaginary noncompact root) or "line" (Cayley root)
  QVec root;           // root coordinates on the current Cartan
  QVec base;           // T-weight coordinates of xi
  QVec direction;      // T-weights of iH_alpha (ray) or X_alpha - X_-alpha (line)
  Interval interval = Interval::NonnegRay;
  QVec witness;        // Z with Phi(exp(tZ)H) on this generator
  Rational pairing;    // <alpha, eta_alpha>
  Rational coeff;      // (alpha, xi) for rays, <alpha, zeta> for lines

  // T-weight coordinates of Phi(exp(t Z) H).
  VecR point(double t) const;
};

struct ImageModel {
  QVec base;                      // xi as a T-weight
  std::vector<Generator> generators;
  std::size_t affine_dim = 0;     // of the hull of the generators
  std::vector<QVec> span;         // basis of the directions
  std::size_t torus_dim = 0;
  // Every generator stays in the closed positive chamber of K. Only then is
  // the hull known to lie in the image (convexity holds chamber-wise).
  bool in_chamber = false;
};

ImageModel image_generators(const MomentSetup& s);

// True when the weight lies in the hull interior with margin; the hull must
// be full-dimensional in t* and inside the chamber, otherwise nothing is
// certified.
bool hull_certifies_interior(const GroupData& g, const ImageModel& m, const VecR& weight, double margin = 1e-6);

struct DimCondition {
  bool holds = false;
  std::size_t dim_g = 0, rank = 0, dim_t = 0, dim_k = 0;
};
DimCondition dim_condition(const GroupData& g);

enum class SupportVerdict { Outside, RelativeBoundary, Interior };
const char* to_string(SupportVerdict v) noexcept;

struct SupportResult {
  SupportVerdict verdict = SupportVerdict::Outside;
  std::string method;  // "hull" or "fiber"
  std::optional<FiberSolution> fiber;
  std::size_t iy_dim = 0;  // dim I(Y) seen at the fiber point
};

struct SupportOptions {
  std::uint64_t seed = 1;
  int restarts = 8;
  double probe = 1e-3;
};

// Starting points for the fiber solver along the witness curves.
std::vector<MatC> start_pool(const MomentSetup& s);

// weight = eta + rho_K as a T-weight.
SupportResult support_test(const MomentSetup& s, const VecR& weight, const SupportOptions& opt);

// Basis (torus coordinates, columns) of the elements of t centralizing
// Ad(g) mu_tilde for every g in the list.
MatR torus_stabilizer_basis(const MomentSetup& s, const std::vector<MatC>& points);

enum class Properness { Proper, Improper, Inconclusive };
enum class ProbeSubgroup { K, T, Trivial };
const char* to_string(Properness v) noexcept;
Properness properness_probe(const MomentSetup& s, ProbeSubgroup sub, std::uint64_t seed = 7);

// Witness samples for output: one row per (generator, t).
struct ImageSample {
  std::size_t generator = 0;
  double t = 0;
  VecR closed_form;  // T-weights from the closed form
  VecR evaluated;    // T-weights of moment_eval at the witness element
  double off_torus = 0;  // norm of the k-part orthogonal to t
};
std::vector<ImageSample> sample_image(const MomentSetup& s, const ImageModel& m, const std::vector<double>& ts);

}  // namespace ktypes
