#pragma once

#include "screwsr/errors.hpp"
#include "screwsr/geodesic.hpp"
#include "screwsr/helix.hpp"
#include "screwsr/matrix_exp.hpp"
#include "screwsr/rational.hpp"
#include "screwsr/spaceform.hpp"
#include "screwsr/spectrum.hpp"
