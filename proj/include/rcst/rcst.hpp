#ifndef RCST_RCST_HPP
#define RCST_RCST_HPP

// Umbrella header: randomized approximation of routing-cost spanning trees
// (minimum routing cost, sum-requirement, and weighted two-source variants)
// over an exact integer perturbation engine with min-uniqueness detection.

#include "rcst/cost.hpp"
#include "rcst/driver.hpp"
#include "rcst/errors.hpp"
#include "rcst/experiment.hpp"
#include "rcst/graph.hpp"
#include "rcst/int128.hpp"
#include "rcst/isolation.hpp"
#include "rcst/mrct.hpp"
#include "rcst/oracle.hpp"
#include "rcst/output.hpp"
#include "rcst/parallel.hpp"
#include "rcst/prng.hpp"
#include "rcst/rational.hpp"
#include "rcst/spanning_tree.hpp"
#include "rcst/sroct.hpp"
#include "rcst/two_mrct.hpp"

#endif
