#pragma once

#include "fewxc/bounds.hpp"
#include "fewxc/classifier.hpp"
#include "fewxc/comb_iso.hpp"
#include "fewxc/constructors.hpp"
#include "fewxc/corpus.hpp"
#include "fewxc/gale.hpp"
#include "fewxc/json_io.hpp"
#include "fewxc/linalg.hpp"
#include "fewxc/lp.hpp"
#include "fewxc/oracle.hpp"
#include "fewxc/parallel.hpp"
#include "fewxc/polytope.hpp"
#include "fewxc/projective.hpp"
#include "fewxc/rational.hpp"
