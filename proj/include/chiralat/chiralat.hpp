#pragma once

#include "arith.hpp"
#include "lattice.hpp"
#include "enumerate.hpp"
#include "roots.hpp"
#include "coxeter.hpp"
#include "vinberg.hpp"
#include "chirality.hpp"
#include "io.hpp"
#include "presets.hpp"
