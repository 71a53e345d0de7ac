package corpus.search;

import java.util.List;

public class Searching {

    public static int binarySearch(int[] arr, int key) {
        int low = 0;
        int high = arr.length - 1;
        while (low <= high) {
            int mid = (low + high) / 2;
            if (arr[mid] == key) {
                return mid;
            } else if (arr[mid] < key) {
                low = mid + 1;
            } else {
                high = mid - 1;
            }
        }
        return -1;
    }

    public static int search(int[] a, int target, int lo, int hi) {
        if (lo > hi) {
            return -1;
        }
        int mid = lo + (hi - lo) / 2;
        if (a[mid] == target) {
            return mid;
        }
        if (a[mid] < target) {
            return search(a, target, mid + 1, hi);
        }
        return search(a, target, lo, mid - 1);
    }

    public int indexOf(long[] sorted, long value) {
        int left = 0;
        int right = sorted.length - 1;
        while (left <= right) {
            int m = (left + right) >>> 1;
            if (sorted[m] < value) {
                left = m + 1;
            } else if (sorted[m] > value) {
                right = m - 1;
            } else {
                return m;
            }
        }
        return -(left + 1);
    }

    static <T extends Comparable<T>> int find(List<T> items, T key) {
        int first = 0;
        int last = items.size() - 1;
        while (first <= last) {
            int middle = (first + last) / 2;
            int cmp = items.get(middle).compareTo(key);
            if (cmp == 0) {
                return middle;
            }
            if (cmp < 0) {
                first = middle + 1;
            } else {
                last = middle - 1;
            }
        }
        return -1;
    }

    public static int lowerBound(int[] values, int x) {
        int start = 0;
        int end = values.length;
        while (start < end) {
            int mid = (start + end) >> 1;
            if (values[mid] < x) {
                start = mid + 1;
            } else {
                end = mid;
            }
        }
        return start;
    }

    public static boolean contains(double[] data, double v) {
        int l = 0;
        int r = data.length - 1;
        while (l <= r) {
            int c = l + (r - l) / 2;
            if (data[c] == v) {
                return true;
            }
            if (data[c] < v) {
                l = c + 1;
            } else {
                r = c - 1;
            }
        }
        return false;
    }

    public static int bsearch(String[] words, String key) {
        int lo = 0;
        int hi = words.length - 1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            int c = words[mid].compareTo(key);
            if (c < 0) {
                lo = mid + 1;
            } else if (c > 0) {
                hi = mid - 1;
            } else {
                return mid;
            }
        }
        return -1;
    }

    public static int searchRotated(int[] nums, int target) {
        int lo = 0;
        int hi = nums.length - 1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (nums[mid] == target) {
                return mid;
            }
            if (nums[lo] <= nums[mid]) {
                if (target >= nums[lo] && target < nums[mid]) {
                    hi = mid - 1;
                } else {
                    lo = mid + 1;
                }
            } else {
                if (target > nums[mid] && target <= nums[hi]) {
                    lo = mid + 1;
                } else {
                    hi = mid - 1;
                }
            }
        }
        return -1;
    }

    public static int locate(int[] arr, int key) {
        int step = Integer.highestOneBit(Math.max(arr.length, 1));
        int pos = -1;
        for (; step > 0; step = step / 2) {
            if (pos + step < arr.length && arr[pos + step] <= key) {
                pos += step;
            }
        }
        return pos >= 0 && arr[pos] == key ? pos : -1;
    }

    public static int firstOccurrence(int[] arr, int key) {
        int low = 0;
        int high = arr.length - 1;
        int answer = -1;
        while (low <= high) {
            int mid = low + ((high - low) >> 1);
            if (arr[mid] >= key) {
                if (arr[mid] == key) {
                    answer = mid;
                }
                high = mid - 1;
            } else {
                low = mid + 1;
            }
        }
        return answer;
    }
}
