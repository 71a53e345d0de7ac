package corpus.search;

import java.util.Map;

public class Lookup {

    public static int linearSearch(int[] arr, int key) {
        for (int i = 0; i < arr.length; i++) {
            if (arr[i] == key) {
                return i;
            }
        }
        return -1;
    }

    public static double average(int[] values) {
        int sum = 0;
        for (int v : values) {
            sum += v;
        }
        return values.length == 0 ? 0 : (double) sum / values.length;
    }

    public static int middleElement(int[] arr) {
        int low = 0;
        int high = arr.length - 1;
        return arr[(low + high) / 2];
    }

    public static double median(double[] sorted) {
        int n = sorted.length;
        if (n % 2 == 1) {
            return sorted[n / 2];
        }
        return (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
    }

    public static double sqrt(double x) {
        double lo = 0;
        double hi = Math.max(1, x);
        for (int iter = 0; iter < 60; iter++) {
            double mid = (lo + hi) / 2;
            if (mid * mid < x) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return lo;
    }

    public static String lookup(Map<String, String> table, String key) {
        String value = table.get(key);
        return value == null ? "" : value;
    }

    public static int findMax(int[] a) {
        int best = Integer.MIN_VALUE;
        int i = 0;
        while (i < a.length) {
            best = Math.max(best, a[i]);
            i++;
        }
        return best;
    }

    public static int countOccurrences(int[] arr, int target) {
        int count = 0;
        for (int value : arr) {
            if (value == target) {
                count++;
            }
        }
        return count;
    }

    public static int ternarySearch(int[] arr, int key) {
        int left = 0;
        int right = arr.length - 1;
        while (left <= right) {
            int third = (right - left) / 3;
            int m1 = left + third;
            int m2 = right - third;
            if (arr[m1] == key) {
                return m1;
            }
            if (arr[m2] == key) {
                return m2;
            }
            if (key < arr[m1]) {
                right = m1 - 1;
            } else if (key > arr[m2]) {
                left = m2 + 1;
            } else {
                left = m1 + 1;
                right = m2 - 1;
            }
        }
        return -1;
    }

    public static int[] halves(int[] values) {
        int[] out = new int[values.length];
        for (int i = 0; i < values.length; i++) {
            out[i] = (values[i] + 1) / 2;
        }
        return out;
    }
}
