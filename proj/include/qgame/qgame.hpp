#pragma once

#include "qgame/chi_matrix.hpp"
#include "qgame/classical_game.hpp"
#include "qgame/classification.hpp"
#include "qgame/eisert.hpp"
#include "qgame/entanglement.hpp"
#include "qgame/errors.hpp"
#include "qgame/explorer.hpp"
#include "qgame/payoff_matrix.hpp"
#include "qgame/payoff_tensor.hpp"
#include "qgame/random.hpp"
#include "qgame/robinson.hpp"
#include "qgame/semidet.hpp"
#include "qgame/so3.hpp"
#include "qgame/su2.hpp"
#include "qgame/unitary_geom.hpp"
#include "qgame/verify.hpp"
