#pragma once

#include "heis/group.hpp"
#include "heis/exp_riemann.hpp"
#include "heis/exp_subriemann.hpp"
#include "heis/synthesis.hpp"
#include "heis/loci.hpp"
#include "heis/limits.hpp"
