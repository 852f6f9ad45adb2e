#pragma once

#include "cascade/automorphism.hpp"
#include "cascade/box.hpp"
#include "cascade/coding.hpp"
#include "cascade/condition.hpp"
#include "cascade/errors.hpp"
#include "cascade/f2linalg.hpp"
#include "cascade/forest.hpp"
#include "cascade/io.hpp"
#include "cascade/names.hpp"
#include "cascade/orbits.hpp"
#include "cascade/sampling.hpp"
#include "cascade/selectors.hpp"
#include "cascade/toggle_set.hpp"
#include "cascade/verify.hpp"
