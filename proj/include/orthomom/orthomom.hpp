#pragma once

#include "orthomom/common.hpp"
#include "orthomom/dense_tensor.hpp"
#include "orthomom/exact_linalg.hpp"
#include "orthomom/gram.hpp"
#include "orthomom/invariant_combination.hpp"
#include "orthomom/moments.hpp"
#include "orthomom/montecarlo.hpp"
#include "orthomom/npolynomial.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/rng.hpp"
#include "orthomom/set_partition.hpp"
#include "orthomom/verify.hpp"
#include "orthomom/weingarten.hpp"
