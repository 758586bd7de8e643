#pragma once

#include <Eigen/Dense>

#include "vdns/scheme.hpp"

// Dense, straightforward-loop reference assembler for the two step systems.
// Written independently of the production element pipeline: barycentric
// coordinates come from signed sub-triangle areas (no reference mapping, no
// Jacobian inverse), fields are summed naively, and everything is accumulated
// into dense matrices. Shares only the mesh/DOF numbering and the quadrature
// point table, which define what "the same matrix entry" means.
namespace vdns::testsupport {

struct DenseSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
};

DenseSystem dense_density_system(const Bdf2Scheme& scheme, const TimeState& state,
                                 const AnalyticCase* c);

DenseSystem dense_momentum_system(const Bdf2Scheme& scheme, const TimeState& state,
                                  const Field& sigma_next, const AnalyticCase* c);

}  // namespace vdns::testsupport
