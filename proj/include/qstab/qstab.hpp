#ifndef QSTAB_QSTAB_HPP
#define QSTAB_QSTAB_HPP

// Convex-QP stability number toolkit: parametric quadratic bounds, exact
// (kappa,tau)-regular set machinery, star complements with Gomory search,
// and Q-graph recognition, validated by brute-force oracles at desk scale.

#include "qstab/enumeration.hpp"
#include "qstab/families.hpp"
#include "qstab/graph.hpp"
#include "qstab/graph6.hpp"
#include "qstab/oracle.hpp"
#include "qstab/qp.hpp"
#include "qstab/ratlinalg.hpp"
#include "qstab/rational.hpp"
#include "qstab/recognition.hpp"
#include "qstab/regular_sets.hpp"
#include "qstab/spectra.hpp"
#include "qstab/star_simplex.hpp"

#endif  // QSTAB_QSTAB_HPP
