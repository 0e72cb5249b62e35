#include "pathcalc/script.hpp"

namespace pathcalc {

// Each script is plain text in the parse_script format. Rule names are the
// catalogue names; where a derivation is traditionally annotated with a
// different label, a comment on the preceding line records that original
// label. Reversed steps realize the sigma(tt)-style annotations of hand
// derivations.
const std::vector<BundledScript>& bundled_scripts() {
  static const std::vector<BundledScript> bundle = {
      {"phi_homomorphism",
       R"(# Base-point transport along a connecting path gamma preserves
# composition: the product of two transported loops rewrites to the
# transport of the composite loop.
start: tau(tau(tau(sigma(gamma),alpha_x0),gamma),tau(tau(sigma(gamma),beta_x0),gamma))
target: tau(tau(sigma(gamma),tau(alpha_x0,beta_x0)),gamma)
steps:
fwd tt @ 1
fwd tt @
rev tt @ 1
# original label: tst
fwd tr @ 1.0
fwd tlr @ 1
fwd tt @
rev tt @ 1
rev tt @
)"},
      {"phi_kappa_identity",
       R"(# A loop at x1 pulled back to x0 and transported forward again is the
# loop itself: the two transports cancel around alpha_x1.
start: tau(tau(sigma(gamma),tau(tau(gamma,alpha_x1),sigma(gamma))),gamma)
target: alpha_x1
steps:
rev tt @ 0
rev tt @ 0.0
fwd tsr @ 0.0.0
fwd tlr @ 0.0
fwd tt @
fwd tsr @ 1
# original label: tsr
fwd trr @
)"},
      {"kappa_phi_identity",
       R"(# The cancellation in the other order: a loop at x0 transported to x1
# and pulled back is recovered, by the mirror of the phi_kappa route.
start: tau(tau(gamma,tau(tau(sigma(gamma),alpha_x0),gamma)),sigma(gamma))
target: alpha_x0
steps:
rev tt @ 0
rev tt @ 0.0
fwd tr @ 0.0.0
fwd tlr @ 0.0
fwd tt @
fwd tr @ 1
fwd trr @
)"},
      {"identity_pushforward",
       R"(# The identity map induces the identity homomorphism: both transport
# legs are reflexive, so the conjugate collapses to the loop itself.
start: tau(tau(rho_x0,alpha_x0),rho_x0)
target: alpha_x0
steps:
fwd tlr @ 0
fwd trr @
)"},
      {"pushforward_homomorphism",
       R"(# A map of spaces induces a homomorphism on loops: the image of a
# composite expands into the product of the images. The chain runs
# composite-to-product, so the rho-introductions are reversed
# contractions; the reversed tr step carries the pair it reintroduces
# as a witness.
start: tau(tau(sigma(gamma),tau(alpha_x0,beta_x0)),gamma)
target: tau(tau(tau(sigma(gamma),alpha_x0),gamma),tau(tau(sigma(gamma),beta_x0),gamma))
steps:
rev tt @ 0
rev tlr @ 0.1
rev tr @ 0.1.0 ! tau(gamma,sigma(gamma))
fwd tt @ 0.1
rev tt @ 0
fwd tt @
)"},
      {"composition_pushforward",
       R"(# Functoriality of the induced homomorphism: pushing forward along
# gamma and then along delta agrees with pushing forward along the
# composite tau(gamma,delta). The reversed stss step folds
# tau(sigma(delta),sigma(gamma)) into sigma(tau(gamma,delta)).
start: tau(tau(sigma(delta),tau(tau(sigma(gamma),alpha_x0),gamma)),delta)
target: tau(tau(sigma(tau(gamma,delta)),alpha_x0),tau(gamma,delta))
steps:
rev tt @ 0
rev tt @ 0.0
fwd tt @ 0
fwd tt @
fwd tt @ 1
rev stss @ 0
rev tt @
)"},
      {"inverse_pushforward",
       R"(# A homeomorphism induces an isomorphism: pushing a loop forward along
# gamma and back along sigma(gamma) returns it. Same endpoints as
# kappa_phi_identity, reached by a different route.
start: tau(tau(gamma,tau(tau(sigma(gamma),alpha_x0),gamma)),sigma(gamma))
target: alpha_x0
steps:
rev tt @ 0
fwd tt @
fwd tr @ 1
fwd trr @
rev tt @
fwd tr @ 0
fwd tlr @
)"},
      {"torus_commutator",
       R"(# On the torus the generating loops commute, so the commutator
# beta * alpha * beta^-1 * alpha^-1 contracts to the reflexive path.
# original labels: co, tst, trr
axiom co: tau(beta,alpha) = tau(alpha,beta)
start: tau(tau(beta,alpha),tau(sigma(beta),sigma(alpha)))
target: rho
steps:
fwd co @ 0
fwd tt @
fwd tts @ 1
fwd tr @
)"},
      {"torus_sum",
       R"(# Composition of two normal forms: (beta alpha) o (beta alpha)
# reassembles into the normal form beta^2 alpha^2 with one commutation.
axiom co: tau(beta,alpha) = tau(alpha,beta)
start: tau(tau(beta,alpha),tau(beta,alpha))
target: tau(tau(tau(beta,beta),alpha),alpha)
steps:
fwd tt @
rev tt @ 1
rev co @ 1.0
rev tt @
rev tt @ 0
)"},
      {"torus_inverse_right",
       R"(# A word composed with its inverse on the right contracts to the
# reflexive path; in this instance the beta-exponent is zero, so no
# commutation is needed.
# original label for the cancellations: tsr
start: tau(tau(alpha,alpha),tau(sigma(alpha),sigma(alpha)))
target: rho
steps:
fwd tt @
rev tt @ 1
fwd tr @ 1.0
fwd tlr @ 1
fwd tr @
)"},
      {"torus_inverse_left",
       R"(# The inverse composed on the left likewise contracts to the
# reflexive path.
# original label for the cancellations: tr
start: tau(tau(sigma(alpha),sigma(alpha)),tau(alpha,alpha))
target: rho
steps:
fwd tt @
rev tt @ 1
fwd tsr @ 1.0
fwd tlr @ 1
fwd tsr @
)"},
      {"torus_identity_right",
       R"(# Composing with the reflexive path on the right changes nothing.
start: tau(tau(beta,alpha),rho_x0)
target: tau(beta,alpha)
steps:
fwd trr @
)"},
      {"torus_identity_left",
       R"(# Composing with the reflexive path on the left changes nothing.
# original label: trr
start: tau(rho_x0,tau(beta,alpha))
target: tau(beta,alpha)
steps:
fwd tlr @
)"},
      {"torus_associativity_left",
       R"(# Reassociating a three-fold composition to the right.
start: tau(tau(beta,alpha),sigma(beta))
target: tau(beta,tau(alpha,sigma(beta)))
steps:
fwd tt @
)"},
      {"torus_associativity_right",
       R"(# Reassociating a three-fold composition to the left.
start: tau(beta,tau(alpha,sigma(beta)))
target: tau(tau(beta,alpha),sigma(beta))
steps:
rev tt @
)"},
      {"word_identity_compose",
       R"(# Word reduction: composing the normal form beta^2 alpha with the
# reflexive path leaves it unchanged.
start: tau(tau(tau(beta,beta),alpha),rho_x0)
target: tau(tau(beta,beta),alpha)
steps:
fwd trr @
)"},
      {"word_append_alpha",
       R"(# Word reduction: appending alpha to beta alpha^-1 cancels the inverse
# pair.
start: tau(tau(beta,sigma(alpha)),alpha)
target: beta
steps:
fwd tt @
fwd tsr @ 1
fwd trr @
)"},
      {"word_append_beta",
       R"(# Word reduction: appending beta to beta alpha commutes it past alpha
# into the beta block.
axiom co: tau(beta,alpha) = tau(alpha,beta)
start: tau(tau(beta,alpha),beta)
target: tau(tau(beta,beta),alpha)
steps:
fwd tt @
rev co @ 1
rev tt @
)"},
      {"word_append_beta_inverse",
       R"(# Word reduction: appending beta^-1 to beta^2 alpha commutes it past
# alpha and cancels against the beta block.
axiom co_ib: tau(sigma(beta),alpha) = tau(alpha,sigma(beta))
start: tau(tau(tau(beta,beta),alpha),sigma(beta))
target: tau(beta,alpha)
steps:
fwd tt @
rev co_ib @ 1
rev tt @
fwd tt @ 0
# original label for the cancellation: tsr
fwd tr @ 0.1
fwd trr @ 0
)"},
      {"word_append_alpha_inverse",
       R"(# Word reduction: appending alpha^-1 to beta alpha cancels directly
# against the trailing alpha; no commutation is needed.
# original label for the cancellation: tsr
start: tau(tau(beta,alpha),sigma(alpha))
target: beta
steps:
fwd tt @
fwd tr @ 1
fwd trr @
)"},
  };
  return bundle;
}

std::vector<std::pair<std::string, VerificationReport>> bundled_paper_suite() {
  std::vector<std::pair<std::string, VerificationReport>> out;
  out.reserve(bundled_scripts().size());
  for (const BundledScript& bundled : bundled_scripts()) {
    out.emplace_back(bundled.name, verify_script(parse_script(bundled.text)));
  }
  return out;
}

}  // namespace pathcalc
