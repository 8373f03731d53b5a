#pragma once

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/codebook.hpp"
#include "qecc_forge/common.hpp"
#include "qecc_forge/exactmat.hpp"
#include "qecc_forge/formats.hpp"
#include "qecc_forge/oqec.hpp"
#include "qecc_forge/pauli.hpp"
#include "qecc_forge/projlogic.hpp"
#include "qecc_forge/qecc.hpp"
#include "qecc_forge/search.hpp"
#include "qecc_forge/symplectic.hpp"
