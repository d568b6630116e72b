#pragma once

#include "tbtlrr/affinity.hpp"
#include "tbtlrr/clustering.hpp"
#include "tbtlrr/experiment.hpp"
#include "tbtlrr/io.hpp"
#include "tbtlrr/metrics.hpp"
#include "tbtlrr/noise.hpp"
#include "tbtlrr/prox.hpp"
#include "tbtlrr/solver.hpp"
#include "tbtlrr/synthetic.hpp"
#include "tbtlrr/tensor.hpp"
#include "tbtlrr/tensor_ops.hpp"
#include "tbtlrr/transform.hpp"
