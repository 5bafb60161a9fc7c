// Convenience header pulling in the whole library.
#pragma once

#include "uvr/algebra.hpp"
#include "uvr/audit.hpp"
#include "uvr/control.hpp"
#include "uvr/errors.hpp"
#include "uvr/hamjac.hpp"
#include "uvr/integrate.hpp"
#include "uvr/io/config.hpp"
#include "uvr/io/output.hpp"
#include "uvr/oracle.hpp"
#include "uvr/poisson.hpp"
#include "uvr/sampling.hpp"
#include "uvr/state.hpp"
#include "uvr/systems.hpp"
