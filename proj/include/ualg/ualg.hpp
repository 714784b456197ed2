#pragma once

// Everything. document.hpp and report.hpp are backed by the ualg_io
// library and need vendor/json.hpp on the include path.

#include "algebra.hpp"
#include "catalog.hpp"
#include "clone.hpp"
#include "commutator.hpp"
#include "congruence.hpp"
#include "document.hpp"
#include "growth.hpp"
#include "partition.hpp"
#include "power.hpp"
#include "profile.hpp"
#include "report.hpp"
#include "structure.hpp"
#include "subuniverse.hpp"
#include "tct.hpp"
#include "term.hpp"
