#pragma once

#include "rilab/nikolskii/conditions.hpp"
#include "rilab/nikolskii/floors.hpp"
#include "rilab/nikolskii/functional.hpp"
#include "rilab/nikolskii/optimize.hpp"
#include "rilab/nikolskii/rates.hpp"
