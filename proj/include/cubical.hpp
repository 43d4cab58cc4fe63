#pragma once

#include "cubical/errors.hpp"
#include "cubical/cube_site.hpp"
#include "cubical/structure.hpp"
#include "cubical/graded_set.hpp"
#include "cubical/cset.hpp"
#include "cubical/category.hpp"
#include "cubical/nerve.hpp"
#include "cubical/lifting.hpp"
#include "cubical/marked.hpp"
#include "cubical/fibrations.hpp"
#include "cubical/sset.hpp"
#include "cubical/grothendieck.hpp"
#include "cubical/hocolim.hpp"
#include "cubical/homology.hpp"
#include "cubical/io.hpp"
