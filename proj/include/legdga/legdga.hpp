#pragma once

#include "symbol.hpp"
#include "poly.hpp"
#include "upoly2.hpp"
#include "dga.hpp"
#include "cone.hpp"
#include "invariants.hpp"
#include "knots.hpp"
#include "io.hpp"
