#pragma once

// Umbrella header: exact branch data for finite Galois covers of curves and
// their representation-theoretic invariants.

#include "coverforge/rational.hpp"
#include "coverforge/cyclotomic.hpp"
#include "coverforge/matrix.hpp"
#include "coverforge/group.hpp"
#include "coverforge/character_table.hpp"
#include "coverforge/matrix_rep.hpp"
#include "coverforge/cover.hpp"
#include "coverforge/local_system.hpp"
#include "coverforge/dihedral.hpp"
#include "coverforge/hurwitz.hpp"
#include "coverforge/io.hpp"
