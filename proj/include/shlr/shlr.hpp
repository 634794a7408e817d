#pragma once

#include "scalar.hpp"
#include "perm.hpp"
#include "residual.hpp"
#include "linalg.hpp"
#include "sparse.hpp"
#include "algebra.hpp"
#include "module.hpp"
#include "symtensor.hpp"
#include "random.hpp"
#include "linfty.hpp"
#include "algebroid.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "io.hpp"
