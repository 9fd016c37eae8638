#pragma once

#include "lattheta/applications.hpp"
#include "lattheta/core.hpp"
#include "lattheta/lattice.hpp"
#include "lattheta/optimize.hpp"
#include "lattheta/proofcheck.hpp"
#include "lattheta/theta.hpp"
