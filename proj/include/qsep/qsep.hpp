#pragma once

// Umbrella header: the whole library.

#include "qsep/anf.hpp"
#include "qsep/bits.hpp"
#include "qsep/boolfun.hpp"
#include "qsep/certify.hpp"
#include "qsep/decision_tree.hpp"
#include "qsep/depth.hpp"
#include "qsep/errors.hpp"
#include "qsep/families.hpp"
#include "qsep/function_io.hpp"
#include "qsep/mmbent.hpp"
#include "qsep/parallel.hpp"
#include "qsep/parity_tree.hpp"
#include "qsep/pnp.hpp"
#include "qsep/qsim.hpp"
#include "qsep/real_poly.hpp"
#include "qsep/truth_table.hpp"
#include "qsep/verify.hpp"
#include "qsep/walsh.hpp"
