#pragma once

#include "odet/acceptance.hpp"
#include "odet/automaton.hpp"
#include "odet/cgs.hpp"
#include "odet/deterministic.hpp"
#include "odet/dot.hpp"
#include "odet/dpw.hpp"
#include "odet/error.hpp"
#include "odet/family.hpp"
#include "odet/lasso.hpp"
#include "odet/oaf.hpp"
#include "odet/oracle.hpp"
#include "odet/parity_tools.hpp"
#include "odet/safra.hpp"
#include "odet/state_set.hpp"
