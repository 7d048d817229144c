#pragma once

#include "qbh/effective_model.hpp"
#include "qbh/entanglement.hpp"
#include "qbh/hubbard.hpp"
#include "qbh/phase_diagram.hpp"
#include "qbh/spin_basis.hpp"
#include "qbh/sym_matrix.hpp"
#include "qbh/validate.hpp"
