#pragma once

#include "neglab/base_norm.hpp"
#include "neglab/bounds.hpp"
#include "neglab/error.hpp"
#include "neglab/gaussian.hpp"
#include "neglab/io.hpp"
#include "neglab/linalg.hpp"
#include "neglab/locc.hpp"
#include "neglab/measures.hpp"
#include "neglab/multipartite.hpp"
#include "neglab/random.hpp"
#include "neglab/states.hpp"
