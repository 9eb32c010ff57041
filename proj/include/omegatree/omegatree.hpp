#pragma once

#include "omegatree/automata.hpp"
#include "omegatree/constructions.hpp"
#include "omegatree/core.hpp"
#include "omegatree/errors.hpp"
#include "omegatree/graph.hpp"
#include "omegatree/io.hpp"
#include "omegatree/probe_task.hpp"
#include "omegatree/random.hpp"
#include "omegatree/subsetq.hpp"
#include "omegatree/teacher.hpp"
#include "omegatree/treelearn.hpp"
#include "omegatree/wordlearn.hpp"
#include "omegatree/words.hpp"
