#pragma once

#include "rilab/lab/config.hpp"
#include "rilab/lab/names.hpp"
#include "rilab/lab/run.hpp"
