#pragma once

#include "treelex/complex.hpp"
#include "treelex/element.hpp"
#include "treelex/errors.hpp"
#include "treelex/expr.hpp"
#include "treelex/forest.hpp"
#include "treelex/fuzz.hpp"
#include "treelex/generators.hpp"
#include "treelex/germ.hpp"
#include "treelex/json_io.hpp"
#include "treelex/numeric.hpp"
#include "treelex/parasemifield.hpp"
#include "treelex/pwl.hpp"
#include "treelex/rational.hpp"
#include "treelex/reconstruct.hpp"
#include "treelex/weighted.hpp"
