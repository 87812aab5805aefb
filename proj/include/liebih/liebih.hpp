#pragma once

#include "liebih/error.hpp"
#include "liebih/rational.hpp"
#include "liebih/numeric.hpp"
#include "liebih/lie_algebra.hpp"
#include "liebih/geometry.hpp"
#include "liebih/algebras.hpp"
#include "liebih/maps.hpp"
#include "liebih/harmonic_cone.hpp"
#include "liebih/semidirect.hpp"
#include "liebih/catalog.hpp"
