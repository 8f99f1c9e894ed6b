#pragma once

#include "zomin/checkers.hpp"
#include "zomin/geometry.hpp"
#include "zomin/harness/config.hpp"
#include "zomin/harness/csv.hpp"
#include "zomin/harness/experiment.hpp"
#include "zomin/problem.hpp"
#include "zomin/problems/bandit.hpp"
#include "zomin/problems/datasets.hpp"
#include "zomin/problems/glm.hpp"
#include "zomin/problems/hard_quasar.hpp"
#include "zomin/problems/ldsi.hpp"
#include "zomin/problems/quadratic.hpp"
#include "zomin/problems/radial_angular.hpp"
#include "zomin/problems/svm.hpp"
#include "zomin/random.hpp"
#include "zomin/smoothing.hpp"
#include "zomin/solvers.hpp"
#include "zomin/theory.hpp"
#include "zomin/vector.hpp"
